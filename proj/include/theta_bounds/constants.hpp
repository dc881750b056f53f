#pragma once

// Explicit constants for the boundedness estimates: the lattice constant
// C(k, xi2, eta), its orbit supremum M, and the minimized implied constants
// for k = 1.  The defining lattice sum sum_n ||n - xi2||^{-eta} converges
// only polynomially, so it is evaluated through two independent convergent
// routes instead of direct truncation:
//   * incomplete-gamma acceleration (any k):
//       E(eta; xi) = pi^{eta/2}/Gamma(eta/2) [ 2/(eta-k)
//           + sum_n G(eta/2, pi ||n-xi||^2)
//           + sum_{m != 0} cos(2 pi m.xi) G((k-eta)/2, pi ||m||^2) ],
//     G(s,x) = Gamma(s,x) x^{-s}; both sums decay like e^{-pi r^2}, so a
//     box of radius 6 leaves a remainder below 1e-30;
//   * Hurwitz-zeta series (k = 1): theta^{-eta} + zeta(eta, 1 - theta)
//     + zeta(eta, 1 + theta) with theta the distance from xi2 to the nearest
//     integer.
// Minimizations follow the shared recipe: golden section on the bracket
// (1 + 1e-4, eta_max), tolerance 1e-8, at most 200 iterations; the zeta pole
// at eta = 1 forces the minimum to be interior.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "theta_bounds/gammainc.hpp"
#include "theta_bounds/golden.hpp"
#include "theta_bounds/orbit.hpp"
#include "theta_bounds/zeta.hpp"

namespace theta_bounds {

namespace detail {

inline constexpr double pi_c = std::numbers::pi;

inline double dist_nearest(double x) { return std::fabs(x - std::nearbyint(x)); }

// G(s, x) = Gamma(s, x) x^{-s}
inline double gamma_G(double s, double x) {
  return gamma_upper(s, x) * std::pow(x, -s);
}

template <class Visit>
void box_scan(std::size_t k, std::int64_t radius, Visit&& visit) {
  std::vector<std::int64_t> n(k, -radius);
  for (;;) {
    visit(n);
    std::size_t i = 0;
    while (i < k && ++n[i] > radius) n[i] = -radius, ++i;
    if (i == k) break;
  }
}

}  // namespace detail

// sum'_{n in Z^k} ||n - xi||^{-eta} (the term n = xi, if lattice, omitted),
// evaluated by incomplete-gamma acceleration; requires eta > k.
inline double epstein_sum(double eta, const std::vector<double>& xi) {
  const std::size_t k = xi.size();
  if (k == 0) throw std::invalid_argument("epstein_sum: need k >= 1");
  if (!(eta > static_cast<double>(k)))
    throw std::domain_error("epstein_sum: need eta > k for convergence");

  bool on_lattice = true;
  for (double c : xi)
    if (detail::dist_nearest(c) != 0) on_lattice = false;

  double acc = 2.0 / (eta - static_cast<double>(k));
  if (on_lattice) acc -= 2.0 / eta;

  const std::int64_t R = 6;
  std::vector<std::int64_t> base(k);
  for (std::size_t i = 0; i < k; ++i)
    base[i] = static_cast<std::int64_t>(std::llround(xi[i]));

  detail::box_scan(k, R, [&](const std::vector<std::int64_t>& off) {
    double r2 = 0;
    for (std::size_t i = 0; i < k; ++i) {
      double d = static_cast<double>(base[i] + off[i]) - xi[i];
      r2 += d * d;
    }
    if (r2 == 0) return;  // omitted singular term
    acc += detail::gamma_G(eta / 2, detail::pi_c * r2);
  });

  detail::box_scan(k, R, [&](const std::vector<std::int64_t>& m) {
    double m2 = 0, mx = 0;
    for (std::size_t i = 0; i < k; ++i) {
      m2 += static_cast<double>(m[i]) * static_cast<double>(m[i]);
      mx += static_cast<double>(m[i]) * xi[i];
    }
    if (m2 == 0) return;
    acc += std::cos(2 * detail::pi_c * mx) *
           detail::gamma_G((static_cast<double>(k) - eta) / 2, detail::pi_c * m2);
  });

  return std::pow(detail::pi_c, eta / 2) / std::tgamma(eta / 2) * acc;
}

// C(k, xi2, eta) = 2^{(2 eta - k)/4} sum_n ||n - xi2||^{-eta}; diverges (as a
// bound) when xi2 lies on the integer lattice.
inline double constant_C(std::size_t k, const std::vector<double>& xi2, double eta) {
  if (xi2.size() != k) throw std::invalid_argument("constant_C: dimension mismatch");
  if (!(eta > static_cast<double>(k)))
    throw std::domain_error("constant_C: need eta > k");
  double theta2 = 0;
  for (double c : xi2) {
    double d = detail::dist_nearest(c);
    theta2 += d * d;
  }
  if (theta2 == 0)
    throw std::domain_error("constant_C: xi2 on the integer lattice, bound diverges");
  return std::pow(2.0, (2 * eta - static_cast<double>(k)) / 4) * epstein_sum(eta, xi2);
}

// Independent k = 1 route through Hurwitz zeta:
// 2^{(2 eta - 1)/4} (theta^{-eta} + zeta(eta, 1 - theta) + zeta(eta, 1 + theta)).
inline double constant_C_series_k1(double xi2, double eta) {
  if (!(eta > 1)) throw std::domain_error("constant_C_series_k1: need eta > 1");
  double theta = detail::dist_nearest(xi2);
  if (theta == 0)
    throw std::domain_error("constant_C_series_k1: xi2 integral, bound diverges");
  double series = std::pow(theta, -eta) + hurwitz_zeta(eta, 1 - theta) +
                  hurwitz_zeta(eta, 1 + theta);
  return std::pow(2.0, (2 * eta - 1) / 4) * series;
}

// M = sup over orbit points (xi1, xi2) of
//     max(C(k, xi2, eta), C(k, xi2 - xi1 + (1/2,...,1/2), eta)).
// Exact rational membership decides divergence before doubles get involved.
inline double constant_M(std::size_t k,
                         const std::vector<std::pair<std::vector<Rational>,
                                                     std::vector<Rational>>>& orbit,
                         double eta) {
  if (orbit.empty()) throw std::invalid_argument("constant_M: empty orbit");
  double best = 0;
  const Rational half(1, 2);
  for (const auto& [xi1, xi2] : orbit) {
    if (xi1.size() != k || xi2.size() != k)
      throw std::invalid_argument("constant_M: dimension mismatch");
    std::vector<Rational> hat(k);
    for (std::size_t i = 0; i < k; ++i) hat[i] = xi2[i] - xi1[i] + half;
    if (dist_to_lattice_squared(xi2) == 0 || dist_to_lattice_squared(hat) == 0)
      throw std::domain_error("constant_M: orbit point on a divergence line (m_k = 0)");
    std::vector<double> a(k), b(k);
    for (std::size_t i = 0; i < k; ++i) {
      a[i] = to_double(xi2[i]);
      b[i] = to_double(hat[i]);
    }
    best = std::fmax(best, std::fmax(constant_C(k, a, eta), constant_C(k, b, eta)));
  }
  return best;
}

inline double constant_M(const OrbitRecord& orbit, double eta) {
  std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> pts;
  pts.reserve(orbit.points.size());
  for (const TorusPair& p : orbit.points)
    pts.push_back({{p.alpha}, {p.beta}});
  return constant_M(1, pts, eta);
}

struct EtaMinimum {
  double eta_star = 0;
  double constant = 0;
};

// Objective for the k = 1 implied constant:
// 2^{(2 eta - 1)/4} 3^eta (2m + 2 zeta(eta)(2^eta - 1)) (1 + beta^2)^{eta/2} kappa(eta);
// the (1 + beta^2) factor is dropped when the sum length is assumed to
// dominate the linear shift (assume_N_ge_beta).
inline double implied_constant_k1_objective(int m, double beta, double eta,
                                            const std::function<double(double)>& kappa,
                                            bool assume_N_ge_beta = false) {
  if (m < 1) throw std::invalid_argument("implied_constant_k1: need m >= 1");
  double v = std::pow(2.0, (2 * eta - 1) / 4) * std::pow(3.0, eta) *
             (2.0 * m + 2.0 * riemann_zeta(eta) * (std::pow(2.0, eta) - 1)) * kappa(eta);
  if (!assume_N_ge_beta) v *= std::pow(1 + beta * beta, eta / 2);
  return v;
}

inline EtaMinimum implied_constant_k1(int m, double beta, double eta_max,
                                      const std::function<double(double)>& kappa,
                                      bool assume_N_ge_beta = false) {
  if (!(eta_max > 1 + 1e-4))
    throw std::invalid_argument("implied_constant_k1: need eta_max > 1");
  auto objective = [&](double eta) {
    return implied_constant_k1_objective(m, beta, eta, kappa, assume_N_ge_beta);
  };
  auto r = golden_section_min(objective, 1 + 1e-4, eta_max);
  return {r.x, r.value};
}

// Specialized constant for the renormalized classical theta series:
// min over eta in (1, 4/3) of 2^{-1/4} 6^eta (2m + 2 zeta(eta)(2^eta - 1)).
inline double theta3_constant_objective(int m, double eta) {
  return std::pow(2.0, -0.25) * std::pow(6.0, eta) *
         (2.0 * m + 2.0 * riemann_zeta(eta) * (std::pow(2.0, eta) - 1));
}

inline EtaMinimum theta3_constant(int m) {
  if (m < 1 || m % 2 == 0)
    throw std::invalid_argument("theta3_constant: m must be odd and >= 1");
  auto objective = [&](double eta) { return theta3_constant_objective(m, eta); };
  auto r = golden_section_min(objective, 1 + 1e-4, 4.0 / 3.0);
  return {r.x, r.value};
}

}  // namespace theta_bounds
