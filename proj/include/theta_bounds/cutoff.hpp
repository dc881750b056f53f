#pragma once

// Cutoff weights f and their behavior under the two unitary families the
// theta series cares about: rotations f -> f_phi and Weyl-Heisenberg shifts
// W(a,b)f(w) = e(b.w) f(w - a), where e(t) = exp(2 pi i t).  The first
// component a translates, the second b modulates; under rotation the pair
// turns as (a, b) -> (a cos phi + b sin phi, -a sin phi + b cos phi), so the
// translation seen by f_phi is s(phi) = a cos phi + b sin phi.
//
// Everything exported downstream is a modulus, so rotated values are
// modulus-faithful and global unit phases are dropped where noted:
//   * Gaussian: |f_phi(w)| = e^{-pi ||w||^2} for every phi (eigenfunction up
//     to unit phase), and for shifted Gaussians
//     |[W(a,b)f]_phi(w)| = e^{-pi ||w - (a cos phi + b sin phi)||^2}.
//   * phi = 0 mod 2pi: f_phi = f exactly; phi = pi: f_phi(w) = f(-w) (exact
//     for plain cutoffs, up to a global phase for shifted ones).
//   * Generic phi for compactly supported profiles: the oscillatory kernel
//     |sin phi|^{-1/2} Int f(v) e(((||w||^2+||v||^2) cos(phi)/2 - w.v)/sin phi) dv,
//     evaluated by refining Simpson quadrature (k = 1 only, experimental).
//   * SharpIndicator at generic phi diverges and is rejected.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "theta_bounds/sl2.hpp"

namespace theta_bounds {

inline constexpr double pi_v = std::numbers::pi;

// e(t) = exp(2 pi i t)
inline std::complex<double> unit_phase(double t) {
  double s = two_pi * t;
  return {std::cos(s), std::sin(s)};
}

class UnsupportedRotation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class CutoffKind { Gaussian, SharpIndicator, SmoothRamp, Tabulated };

struct Cutoff {
  CutoffKind kind = CutoffKind::Gaussian;
  std::size_t k = 1;
  int ramp_N = 0;                        // SmoothRamp transition scale
  std::vector<double> tab;               // Tabulated samples on [tab_lo, tab_hi]
  double tab_lo = 0, tab_hi = 1;
  std::vector<double> shift_a, shift_b;  // accumulated W(a,b); empty = unshifted

  bool shifted() const {
    for (double v : shift_a)
      if (v != 0) return true;
    for (double v : shift_b)
      if (v != 0) return true;
    return false;
  }
  bool closed_form_phi() const { return kind == CutoffKind::Gaussian; }
  bool compact_support() const { return kind != CutoffKind::Gaussian; }
};

inline Cutoff gaussian_cutoff(std::size_t k = 1) {
  Cutoff f;
  f.kind = CutoffKind::Gaussian;
  f.k = k;
  return f;
}

inline Cutoff sharp_indicator() {
  Cutoff f;
  f.kind = CutoffKind::SharpIndicator;
  f.k = 1;
  return f;
}

inline Cutoff smooth_ramp(int N) {
  if (N < 1) throw std::invalid_argument("smooth_ramp: N must be >= 1");
  Cutoff f;
  f.kind = CutoffKind::SmoothRamp;
  f.k = 1;
  f.ramp_N = N;
  return f;
}

inline Cutoff tabulated_cutoff(std::vector<double> samples, double lo, double hi) {
  if (samples.size() < 2 || !(hi > lo))
    throw std::invalid_argument("tabulated_cutoff: need >= 2 samples and hi > lo");
  Cutoff f;
  f.kind = CutoffKind::Tabulated;
  f.k = 1;
  f.tab = std::move(samples);
  f.tab_lo = lo;
  f.tab_hi = hi;
  return f;
}

inline double smoothstep(double t) {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  return t * t * (3 - 2 * t);
}

// Base 1-D profile, before any shift.  SmoothRamp(N): 0 outside
// (0, 1 + 1/N), C^1 cubic ramps on [0, 1/N] and [1, 1 + 1/N], plateau 1 on
// [1/N, 1].
inline double base_profile(const Cutoff& f, double u) {
  switch (f.kind) {
    case CutoffKind::Gaussian:
      return std::exp(-pi_v * u * u);
    case CutoffKind::SharpIndicator:
      return (u > 0 && u <= 1) ? 1.0 : 0.0;
    case CutoffKind::SmoothRamp: {
      double invN = 1.0 / f.ramp_N;
      if (u <= 0 || u >= 1 + invN) return 0;
      if (u < invN) return smoothstep(f.ramp_N * u);
      if (u <= 1) return 1;
      return smoothstep(f.ramp_N * (1 + invN - u));
    }
    case CutoffKind::Tabulated: {
      if (u < f.tab_lo || u > f.tab_hi) return 0;
      double t = (u - f.tab_lo) / (f.tab_hi - f.tab_lo) * (f.tab.size() - 1);
      std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t), f.tab.size() - 2);
      double frac = t - static_cast<double>(i);
      return f.tab[i] * (1 - frac) + f.tab[i + 1] * frac;
    }
  }
  return 0;
}

// Base support [lo, hi] for the compact kinds.
inline void base_support(const Cutoff& f, double& lo, double& hi) {
  switch (f.kind) {
    case CutoffKind::SharpIndicator:
      lo = 0;
      hi = 1;
      return;
    case CutoffKind::SmoothRamp:
      lo = 0;
      hi = 1.0 + 1.0 / f.ramp_N;
      return;
    case CutoffKind::Tabulated:
      lo = f.tab_lo;
      hi = f.tab_hi;
      return;
    default:
      throw std::logic_error("base_support: Gaussian has no compact support");
  }
}

// Full complex value including the accumulated shift:
// e(b.w) * f_base(w - a).  Compact kinds are k = 1.
inline std::complex<double> eval(const Cutoff& f, const std::vector<double>& w) {
  require_same_k(f.k, w.size());
  double bw = 0;
  if (!f.shift_b.empty())
    for (std::size_t i = 0; i < f.k; ++i) bw += f.shift_b[i] * w[i];
  double base;
  if (f.kind == CutoffKind::Gaussian) {
    double q = 0;
    for (std::size_t i = 0; i < f.k; ++i) {
      double u = w[i] - (f.shift_a.empty() ? 0.0 : f.shift_a[i]);
      q += u * u;
    }
    base = std::exp(-pi_v * q);
  } else {
    base = base_profile(f, w[0] - (f.shift_a.empty() ? 0.0 : f.shift_a[0]));
  }
  if (bw == 0) return {base, 0};
  return base * unit_phase(bw);
}

// W(a,b): modulation a, translation b, yielding w -> e(a.w) f(w - b) on top
// of any existing shift; composition is additive in (a, b) up to a global
// unit phase (modulus contract).
inline Cutoff weyl_heis_act(const std::vector<double>& a, const std::vector<double>& b,
                            Cutoff f) {
  require_same_k(a.size(), f.k);
  require_same_k(b.size(), f.k);
  if (f.shift_a.empty()) f.shift_a.assign(f.k, 0.0);
  if (f.shift_b.empty()) f.shift_b.assign(f.k, 0.0);
  for (std::size_t i = 0; i < f.k; ++i) {
    f.shift_a[i] += b[i];
    f.shift_b[i] += a[i];
  }
  return f;
}

// Rotated-profile shift offset s(phi) = a cos phi + b sin phi (the
// translation rule |[W(a,b)f]_phi(w)| = |f_phi(w - s(phi))|).
inline std::vector<double> rotation_shift(const Cutoff& f, double phi) {
  std::vector<double> s(f.k, 0.0);
  double c = std::cos(phi), sn = std::sin(phi);
  for (std::size_t i = 0; i < f.k; ++i) {
    if (!f.shift_a.empty()) s[i] += f.shift_a[i] * c;
    if (!f.shift_b.empty()) s[i] += f.shift_b[i] * sn;
  }
  return s;
}

// Rotated frequency component -a sin phi + b cos phi (second slot of the
// rotated pair; modulates relative phases of the rotated profile).
inline std::vector<double> rotation_freq(const Cutoff& f, double phi) {
  std::vector<double> s(f.k, 0.0);
  double c = std::cos(phi), sn = std::sin(phi);
  for (std::size_t i = 0; i < f.k; ++i) {
    if (!f.shift_a.empty()) s[i] -= f.shift_a[i] * sn;
    if (!f.shift_b.empty()) s[i] += f.shift_b[i] * c;
  }
  return s;
}

namespace detail {

// Oscillatory rotation integral for a compactly supported 1-D profile:
//   |sin phi|^{-1/2} Int_lo^hi g(v) e(((w^2 + v^2) cos(phi)/2 - w v)/sin phi) dv
// by Simpson with period-resolving node counts, refined until two successive
// levels agree within tol.
inline std::complex<double> fresnel_rotate(const std::function<std::complex<double>(double)>& g,
                                           double lo, double hi, double phi, double w,
                                           double tol) {
  double sn = std::sin(phi), cs = std::cos(phi);
  auto integrand = [&](double v) {
    return g(v) * unit_phase((0.5 * (w * w + v * v) * cs - w * v) / sn);
  };
  double vmax = std::fmax(std::fabs(lo), std::fabs(hi));
  double cycles = (std::fabs(cs) * vmax + std::fabs(w)) / std::fabs(sn) * (hi - lo);
  std::size_t n = 64;
  while (n < 16.0 * cycles && n < (1u << 22)) n *= 2;

  auto simpson = [&](std::size_t nodes) {
    double h = (hi - lo) / static_cast<double>(nodes);
    std::complex<double> acc = integrand(lo) + integrand(hi);
    for (std::size_t i = 1; i < nodes; ++i)
      acc += integrand(lo + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    return acc * (h / 3.0);
  };

  std::complex<double> prev = simpson(n);
  for (int level = 0; level < 10; ++level) {
    n *= 2;
    std::complex<double> next = simpson(n);
    if (std::abs(next - prev) < 0.5 * tol || n >= (1u << 24)) {
      prev = next;
      break;
    }
    prev = next;
  }
  return prev / std::sqrt(std::fabs(sn));
}

}  // namespace detail

// f_phi(w) with absolute error <= tol.  Modulus contract: the Gaussian
// branch returns the real value e^{-pi ||w - s(phi)||^2} (its unit phase is
// global and never observed); the phi = pi branch of shifted cutoffs is also
// exact only up to a global phase.
inline std::complex<double> f_phi(const Cutoff& f, double phi, const std::vector<double>& w,
                                  double tol = 1e-10) {
  require_same_k(f.k, w.size());
  phi = mod_2pi(phi);
  const double eps = 1e-12;
  if (phi < eps || phi > two_pi - eps) return eval(f, w);
  if (std::fabs(phi - pi_v) < eps) {
    std::vector<double> neg(w);
    for (auto& c : neg) c = -c;
    return eval(f, neg);
  }
  if (f.kind == CutoffKind::Gaussian) {
    std::vector<double> s = rotation_shift(f, phi);
    std::vector<double> q2 = rotation_freq(f, phi);
    double q = 0, bw = 0;
    for (std::size_t i = 0; i < f.k; ++i) {
      double u = w[i] - s[i];
      q += u * u;
      bw += q2[i] * w[i];
    }
    double mag = std::exp(-pi_v * q);
    if (bw == 0) return {mag, 0};
    return mag * unit_phase(bw);
  }
  if (f.kind == CutoffKind::SharpIndicator)
    throw UnsupportedRotation("f_phi: sharp indicator does not rotate (series diverges)");
  // compact profile, k = 1: rotation integral of the full (shifted) profile
  double lo, hi;
  base_support(f, lo, hi);
  double sa = f.shift_a.empty() ? 0.0 : f.shift_a[0];
  auto g = [&](double v) { return eval(f, {v}); };
  return detail::fresnel_rotate(g, lo + sa, hi + sa, phi, w[0], tol);
}

}  // namespace theta_bounds
