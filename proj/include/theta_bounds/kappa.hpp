#pragma once

// kappa_eta(f) = sup over phi and w of (1 + ||w||^2)^{eta/2} |f_phi(w)|:
// the rotation-uniform polynomially-weighted sup norm that controls all
// boundedness constants downstream.
//
// Branches:
//   * plain Gaussian: exact closed form, 1 below the critical weight
//     eta = 2 pi and e^pi (eta / 2 pi)^{eta/2} e^{-eta/2} above it;
//   * shifted Gaussian: exact reduction to a 1-D maximization.  The rotated
//     shift s(phi) = a cos phi + b sin phi has largest norm
//     A = sqrt(lambda_max([[a.a, a.b], [a.b, b.b]])), the sup over w aligns
//     with the shift, and the pointwise sup is increasing in ||s||, so
//     kappa = max_{t >= 0} (1 + t^2)^{eta/2} e^{-pi (t - A)^2};
//   * compact profiles: numeric scan over a (phi, w) grid with golden-section
//     refinement; uncertified (quadrature-based rotated values).
// SharpIndicator is rejected: its rotated series diverges, so the sup over
// phi does not exist.

#include <cmath>
#include <vector>

#include "theta_bounds/cutoff.hpp"
#include "theta_bounds/golden.hpp"

namespace theta_bounds {

struct KappaResult {
  double value = 0;
  bool certified = false;
};

struct KappaGrid {
  std::size_t n_phi = 24;          // angles in [0, pi); symmetry covers the rest
  double w_max = 0;                // 0 = derive from support and shift
  std::size_t n_w = 200;           // w samples per angle
  double quad_tol = 1e-6;          // rotated-profile quadrature tolerance
  std::vector<double> phi_values;  // optional explicit angle list
};

inline double kappa_gaussian_closed(double eta) {
  if (eta <= two_pi) return 1.0;
  return std::exp(pi_v) * std::pow(eta / two_pi, eta / 2) * std::exp(-eta / 2);
}

namespace detail {

// Largest ||a cos phi + b sin phi|| over phi: sqrt of the top eigenvalue of
// the 2x2 Gram matrix of (a, b).
inline double max_rotated_shift(const std::vector<double>& a, const std::vector<double>& b) {
  double aa = 0, bb = 0, ab = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) ab += a[i] * b[i];
  for (double v : a) aa += v * v;
  for (double v : b) bb += v * v;
  double mean = 0.5 * (aa + bb);
  double diff = 0.5 * (aa - bb);
  return std::sqrt(std::fmax(0.0, mean + std::sqrt(diff * diff + ab * ab)));
}

// Coarse scan + golden refinement of a smooth 1-D function on [lo, hi].
template <class F>
double scan_then_refine(F&& g, double lo, double hi, std::size_t n) {
  double best_x = lo, best = g(lo);
  for (std::size_t i = 1; i <= n; ++i) {
    double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    double v = g(x);
    if (v > best) best = v, best_x = x;
  }
  double step = (hi - lo) / static_cast<double>(n);
  auto r = golden_section_max(g, std::fmax(lo, best_x - step), std::fmin(hi, best_x + step));
  return std::fmax(best, r.value);
}

}  // namespace detail

inline KappaResult kappa_eta(const Cutoff& f, double eta, const KappaGrid& grid = {}) {
  if (!(eta > 0)) throw std::invalid_argument("kappa_eta: need eta > 0");

  if (f.kind == CutoffKind::Gaussian) {
    if (!f.shifted()) return {kappa_gaussian_closed(eta), true};
    std::vector<double> a = f.shift_a.empty() ? std::vector<double>(f.k, 0.0) : f.shift_a;
    std::vector<double> b = f.shift_b.empty() ? std::vector<double>(f.k, 0.0) : f.shift_b;
    double A = detail::max_rotated_shift(a, b);
    double hi = A + std::fmax(5.0, eta / 4);
    auto g = [&](double t) {
      return std::pow(1 + t * t, eta / 2) * std::exp(-pi_v * (t - A) * (t - A));
    };
    return {detail::scan_then_refine(g, 0.0, hi, 512), true};
  }

  if (f.kind == CutoffKind::SharpIndicator)
    throw UnsupportedRotation("kappa_eta: sharp indicator has no finite rotated sup");

  // compact profile (k = 1): grid scan, refined in w at the best angle
  double slo, shi;
  base_support(f, slo, shi);
  double sa = f.shift_a.empty() ? 0.0 : f.shift_a[0];
  double sb = f.shift_b.empty() ? 0.0 : f.shift_b[0];
  double w_max = grid.w_max > 0
                     ? grid.w_max
                     : std::fmax(std::fabs(slo), std::fabs(shi)) + std::hypot(sa, sb) + 10.0;

  std::vector<double> phis = grid.phi_values;
  if (phis.empty()) {
    phis.resize(grid.n_phi);
    for (std::size_t i = 0; i < grid.n_phi; ++i)
      phis[i] = pi_v * static_cast<double>(i) / static_cast<double>(grid.n_phi);
  }

  double best = 0, best_phi = 0, best_w = 0;
  std::vector<double> w(1);
  for (double phi : phis) {
    for (std::size_t j = 0; j < grid.n_w; ++j) {
      w[0] = -w_max + 2 * w_max * static_cast<double>(j) / static_cast<double>(grid.n_w - 1);
      double val = std::pow(1 + w[0] * w[0], eta / 2) *
                   std::abs(f_phi(f, phi, w, grid.quad_tol));
      if (val > best) best = val, best_phi = phi, best_w = w[0];
    }
  }
  double step = 2 * w_max / static_cast<double>(grid.n_w - 1);
  auto g = [&](double t) {
    return std::pow(1 + t * t, eta / 2) *
           std::abs(f_phi(f, best_phi, std::vector<double>{t}, grid.quad_tol));
  };
  auto refined = golden_section_max(g, best_w - step, best_w + step, 1e-6);
  return {std::fmax(best, refined.value), false};
}

// Right-hand side of the shift inequality
// kappa_eta(W(a,b) f) <= 3^eta (1 + ||a||^2 + ||b||^2)^{eta/2} kappa_eta(f).
inline double kappa_shift_bound(double eta, const std::vector<double>& a,
                                const std::vector<double>& b, double kappa_f) {
  double n2 = 0;
  for (double v : a) n2 += v * v;
  for (double v : b) n2 += v * v;
  return std::pow(3.0, eta) * std::pow(1 + n2, eta / 2) * kappa_f;
}

}  // namespace theta_bounds
