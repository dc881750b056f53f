#pragma once

// Lattice sums: the windowed quadratic exponential sum, the theta modulus at
// a point of the homogeneous space, and the classical one-variable theta
// series.  Every Gaussian truncation is certified: the window radius is grown
// until an explicit tail bound drops below the requested tolerance, and
// exceeding the radius cap raises TruncationError with the tail actually
// achieved.  Term phases are accumulated in long double and reduced mod 1
// before sin/cos so that quadratic phases of size ~1e8 cycles still carry
// ~1e-11 absolute angle error.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "theta_bounds/cutoff.hpp"
#include "theta_bounds/sl2.hpp"

namespace theta_bounds {

struct TruncationBudget {
  double tol = 1e-10;
  std::int64_t max_radius = 4'000'000;
};

class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_tail(achieved) {}
  double achieved_tail = 0;
};

namespace detail {

inline constexpr std::int64_t max_lattice_points = 300'000'000;

// e(t) with t accumulated in long double and reduced mod 1 first.
inline std::complex<double> unit_phase_l(long double t) {
  t -= std::floor(t);
  return unit_phase(static_cast<double>(t));
}

// One-sided-symmetric 1-D Gaussian tail: sum over |n - c| > R of
// e^{-pi y (n-c)^2} <= 2 e^{-pi y R^2} + (1/sqrt(y)) erfc(R sqrt(pi y)).
inline double gaussian_lattice_tail(double y, double R) {
  double s = std::sqrt(pi_v * y);
  return 2 * std::exp(-pi_v * y * R * R) + std::erfc(R * s) / std::sqrt(y);
}

// Smallest radius with gaussian_lattice_tail <= tau, else throws.
inline std::int64_t gaussian_radius(double y, double tau, std::int64_t max_radius) {
  double arg = std::log(std::max(2.0 * (2.0 + 1.0 / std::sqrt(y)) / tau, 2.0));
  double R = std::max(1.0, std::ceil(std::sqrt(arg / (pi_v * y))));
  while (gaussian_lattice_tail(y, R) > tau && R <= static_cast<double>(max_radius))
    R *= 2;
  if (R > static_cast<double>(max_radius))
    throw TruncationError("gaussian_radius: tail does not fit in radius cap",
                          gaussian_lattice_tail(y, static_cast<double>(max_radius)));
  return static_cast<std::int64_t>(R);
}

// Iterates n over the box prod_i [lo_i, hi_i], calling visit(n).
template <class Visit>
void lattice_box(const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi,
                 Visit&& visit) {
  std::size_t k = lo.size();
  double count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (hi[i] < lo[i]) return;
    count *= static_cast<double>(hi[i] - lo[i] + 1);
  }
  if (count > static_cast<double>(max_lattice_points))
    throw TruncationError("lattice_box: window exceeds the point cap", count);
  std::vector<std::int64_t> n(lo);
  for (;;) {
    visit(n);
    std::size_t i = 0;
    while (i < k && ++n[i] > hi[i]) n[i] = lo[i], ++i;
    if (i == k) break;
  }
}

}  // namespace detail

// S_N(x; alpha, beta) = sum_{n in Z^k} f(n/N) e((||n||^2/2 + beta.n) x + alpha.n).
// The window is the cutoff's support (compact kinds, exact) or a certified
// Gaussian radius at internal tolerance 1e-12.
inline std::complex<double> weyl_sum(const Cutoff& f, int N, double x,
                                     const std::vector<double>& alpha,
                                     const std::vector<double>& beta) {
  if (N < 1) throw std::invalid_argument("weyl_sum: N must be >= 1");
  std::size_t k = f.k;
  require_same_k(k, alpha.size());
  require_same_k(k, beta.size());

  std::vector<std::int64_t> lo(k), hi(k);
  if (f.kind == CutoffKind::Gaussian) {
    const double tol = 1e-12;
    double L = std::log(std::max(2.0, static_cast<double>(k) *
                                          std::pow(N + 2.0, static_cast<double>(k)) / tol));
    double r = std::sqrt(L / pi_v) + 1.0;  // radius in w = n/N units
    for (std::size_t i = 0; i < k; ++i) {
      double c = f.shift_a.empty() ? 0.0 : f.shift_a[i];
      lo[i] = static_cast<std::int64_t>(std::floor(N * (c - r)));
      hi[i] = static_cast<std::int64_t>(std::ceil(N * (c + r)));
    }
  } else {
    double slo, shi;
    base_support(f, slo, shi);
    double c = f.shift_a.empty() ? 0.0 : f.shift_a[0];
    lo[0] = static_cast<std::int64_t>(std::floor(N * (slo + c))) - 1;
    hi[0] = static_cast<std::int64_t>(std::ceil(N * (shi + c))) + 1;
  }

  const long double xl = x;
  long double re = 0, im = 0;
  std::vector<double> w(k);
  detail::lattice_box(lo, hi, [&](const std::vector<std::int64_t>& n) {
    long double s2 = 0, bn = 0, an = 0;
    for (std::size_t i = 0; i < k; ++i) {
      long double ni = static_cast<long double>(n[i]);
      s2 += ni * ni;
      bn += static_cast<long double>(beta[i]) * ni;
      an += static_cast<long double>(alpha[i]) * ni;
      w[i] = static_cast<double>(n[i]) / N;
    }
    std::complex<double> weight = eval(f, w);
    if (weight == std::complex<double>(0, 0)) return;
    std::complex<double> ph = detail::unit_phase_l((0.5L * s2 + bn) * xl + an);
    std::complex<double> term = weight * ph;
    re += term.real();
    im += term.imag();
  });
  return {static_cast<double>(re), static_cast<double>(im)};
}

// |Theta_f(z, phi; xi)| = y^{k/4} |sum_n f_phi((n - xi2) sqrt(y))
//                                   e(||n - xi2||^2 x / 2 + n . xi1)|.
// Gaussian cutoffs use the closed rotated profile (certified tail at any
// phi); compact cutoffs are exact at phi = 0 or pi, reject SharpIndicator
// elsewhere, and fall back to an uncertified quadrature window otherwise.
inline double theta_modulus(const Cutoff& f, const IwasawaPoint& p,
                            const TruncationBudget& budget = {}) {
  std::size_t k = f.k;
  require_same_k(k, p.k());
  if (!(p.y > 0)) throw std::invalid_argument("theta_modulus: need y > 0");
  const double y = p.y, sqy = std::sqrt(y);
  const double phi = mod_2pi(p.phi);
  const long double xl = p.x;

  long double re = 0, im = 0;
  auto add_term = [&](const std::vector<std::int64_t>& n, std::complex<double> weight) {
    if (weight == std::complex<double>(0, 0)) return;
    long double t = 0;
    for (std::size_t i = 0; i < k; ++i) {
      long double d = static_cast<long double>(n[i]) - static_cast<long double>(p.xi2[i]);
      t += 0.5L * d * d * xl + static_cast<long double>(n[i]) *
                                   static_cast<long double>(p.xi1[i]);
    }
    std::complex<double> term = weight * detail::unit_phase_l(t);
    re += term.real();
    im += term.imag();
  };

  std::vector<std::int64_t> lo(k), hi(k);
  if (f.kind == CutoffKind::Gaussian) {
    std::vector<double> s = rotation_shift(f, phi);
    std::vector<double> q2 = rotation_freq(f, phi);
    double tol_series = budget.tol / std::pow(y, k / 4.0);
    double F = 2.0 + 1.0 / sqy;
    double tau = tol_series / (k * std::pow(F, static_cast<double>(k - 1)));
    std::int64_t R = detail::gaussian_radius(y, tau, budget.max_radius);
    for (std::size_t i = 0; i < k; ++i) {
      double c = p.xi2[i] + s[i] / sqy;
      lo[i] = static_cast<std::int64_t>(std::llround(c)) - R;
      hi[i] = static_cast<std::int64_t>(std::llround(c)) + R;
    }
    detail::lattice_box(lo, hi, [&](const std::vector<std::int64_t>& n) {
      double q = 0;
      long double extra = 0;
      for (std::size_t i = 0; i < k; ++i) {
        double v = (static_cast<double>(n[i]) - p.xi2[i]) * sqy;
        double u = v - s[i];
        q += u * u;
        extra += static_cast<long double>(q2[i]) * static_cast<long double>(v);
      }
      double mag = std::exp(-pi_v * q);
      add_term(n, mag * detail::unit_phase_l(extra));
    });
  } else {
    double slo, shi;
    base_support(f, slo, shi);
    double sa = f.shift_a.empty() ? 0.0 : f.shift_a[0];
    const double eps = 1e-9;
    bool at_zero = phi < eps || phi > two_pi - eps;
    bool at_pi = std::fabs(phi - pi_v) < eps;
    if (at_zero || at_pi) {
      // f_phi is f(w) or f(-w): exact support window
      double wlo = slo + sa, whi = shi + sa;
      if (at_pi) {
        double t = wlo;
        wlo = -whi;
        whi = -t;
      }
      lo[0] = static_cast<std::int64_t>(std::floor(p.xi2[0] + wlo / sqy)) - 1;
      hi[0] = static_cast<std::int64_t>(std::ceil(p.xi2[0] + whi / sqy)) + 1;
      std::vector<double> w(1);
      detail::lattice_box(lo, hi, [&](const std::vector<std::int64_t>& n) {
        double v = (static_cast<double>(n[0]) - p.xi2[0]) * sqy;
        w[0] = at_pi ? -v : v;
        add_term(n, eval(f, w));
      });
    } else if (f.kind == CutoffKind::SharpIndicator) {
      throw UnsupportedRotation(
          "theta_modulus: sharp indicator does not rotate (series diverges)");
    } else {
      // Rotated compact profile: no certified envelope, fixed window
      // (experimental path; profile decay ~ |w|^-2 for C^1 ramps).
      double W = std::fmax(12.0, (shi - slo) + std::fabs(sa) + 12.0);
      double c = rotation_shift(f, phi)[0];
      lo[0] = static_cast<std::int64_t>(std::floor(p.xi2[0] + (c - W) / sqy)) - 1;
      hi[0] = static_cast<std::int64_t>(std::ceil(p.xi2[0] + (c + W) / sqy)) + 1;
      std::vector<double> w(1);
      detail::lattice_box(lo, hi, [&](const std::vector<std::int64_t>& n) {
        w[0] = (static_cast<double>(n[0]) - p.xi2[0]) * sqy;
        add_term(n, f_phi(f, phi, w, budget.tol));
      });
    }
  }
  double mod = std::hypot(static_cast<double>(re), static_cast<double>(im));
  return std::pow(y, k / 4.0) * mod;
}

// theta3(z; w) = sum_{n in Z} e(n z + n^2 w / 2), convergent for Im w > 0.
// Certified window: terms are bounded by e^{g(n)} with g(t) = 2 pi a t - pi v t^2,
// a = |Im z|, v = Im w.  g decreases past its peak t = a/v, so for r > a/v the
// one-sided tail obeys the monotone comparison
//   sum_{n >= r} e^{g(n)} <= e^{g(r)} + int_r^inf e^{g(t)} dt
//                         <= e^{g(r)} (1 + 1 / (2 sqrt(v)))
// (complete the square; erfc(u) <= e^{-u^2}).  Both sides together double it.
inline std::complex<double> theta3(std::complex<double> z, std::complex<double> w,
                                   double tol = 1e-10,
                                   std::int64_t max_radius = 4'000'000) {
  const double v = w.imag();
  if (!(v > 0)) throw std::invalid_argument("theta3: need Im w > 0");
  const double a = std::fabs(z.imag());

  const double slack = 2.0 * (1.0 + 0.5 / std::sqrt(v));
  auto tail_at = [&](double r) {
    return slack * std::exp(2 * pi_v * a * r - pi_v * r * r * v);
  };
  double L = std::log(std::fmax(slack / tol, 2.0));
  double R = std::ceil((2 * pi_v * a +
                        std::sqrt(4 * pi_v * pi_v * a * a + 4 * pi_v * v * L)) /
                       (2 * pi_v * v));
  R = std::fmax(R, std::ceil(a / v + 1.0));
  R = std::fmax(R, 1.0);
  while (tail_at(R + 1) > tol && R <= static_cast<double>(max_radius))
    R = std::ceil(R * 1.25) + 1;
  if (R > static_cast<double>(max_radius))
    throw TruncationError("theta3: tail does not fit in radius cap",
                          tail_at(R + 1));

  const std::int64_t Ri = static_cast<std::int64_t>(R);
  const long double zr = z.real(), wr = w.real();
  const double zi = z.imag();
  long double re = 0, im = 0;
  for (std::int64_t n = -Ri; n <= Ri; ++n) {
    long double nl = static_cast<long double>(n);
    std::complex<double> ph = detail::unit_phase_l(nl * zr + 0.5L * nl * nl * wr);
    double mag = std::exp(-two_pi * static_cast<double>(n) * zi -
                          pi_v * static_cast<double>(n) * static_cast<double>(n) * v);
    re += mag * ph.real();
    im += mag * ph.imag();
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

// eps^{1/4} |theta3(alpha + beta x; x + i eps)|: the renormalized modulus
// whose boundedness along eps -> 0 separates good from bad spectral pairs.
inline double theta3_scaled_modulus(double alpha, double beta, double x, double eps,
                                    double tol = 1e-10) {
  std::complex<double> val = theta3({alpha + beta * x, 0.0}, {x, eps}, tol);
  return std::pow(eps, 0.25) * std::abs(val);
}

}  // namespace theta_bounds
