#pragma once

// Upper incomplete gamma Gamma(s, x) for real s, x > 0 (x = 0 allowed when
// s > 0).  Continued fraction for x >= max(1.5, s+1), series complement for
// small x with s > 0, and the downward recurrence
// Gamma(s, x) = (Gamma(s+1, x) - x^s e^{-x}) / s for s <= 0 at small x.
// The recurrence loses accuracy when s sits within ~1e-6 of a non-positive
// integer at small x; the lattice-sum callers never enter that corner
// (their negative orders always come with x >= pi, the CF region).

#include <cmath>
#include <stdexcept>

namespace theta_bounds {
namespace detail {

inline double gamma_upper_cf(double s, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    double an = -static_cast<double>(i) * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + s * std::log(x)) * h;
}

inline double gamma_lower_series(double s, double x) {
  // gamma(s,x) = x^s e^{-x} sum_{n>=0} x^n / (s (s+1) ... (s+n))
  double term = 1.0 / s;
  double sum = term;
  for (int n = 1; n <= 2000; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
  }
  return std::exp(-x + s * std::log(x)) * sum;
}

}  // namespace detail

inline double gamma_upper(double s, double x) {
  if (x < 0) throw std::domain_error("gamma_upper: require x >= 0");
  if (x == 0) {
    if (s > 0) return std::tgamma(s);
    throw std::domain_error("gamma_upper: diverges at x = 0 for s <= 0");
  }
  if (x >= std::fmax(1.5, s + 1.0)) return detail::gamma_upper_cf(s, x);
  if (s > 0) return std::tgamma(s) - detail::gamma_lower_series(s, x);
  // s <= 0 with small x: lift into (0, 1], then walk back down
  int lift = static_cast<int>(std::floor(1.0 - s));
  double g = gamma_upper(s + lift, x);
  for (int i = 0; i < lift; ++i) {
    double t = s + lift - i;  // holding Gamma(t, x); step to Gamma(t-1, x)
    g = (g - std::pow(x, t - 1.0) * std::exp(-x)) / (t - 1.0);
  }
  return g;
}

}  // namespace theta_bounds
