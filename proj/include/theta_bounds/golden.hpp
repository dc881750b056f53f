#pragma once

// Golden-section search for the minimum of a unimodal scalar function on a
// bracket.  Unimodality is the caller's responsibility; the bound modules
// certify it per call with an eta* +- 0.01 probe.

#include <cmath>

namespace theta_bounds {

struct MinimumResult {
  double x, value;
};

template <class F>
MinimumResult golden_section_min(F&& f, double lo, double hi, double xtol = 1e-8,
                                 int max_iter = 200) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

// Maximization wrapper for the kappa-style suprema.
template <class F>
MinimumResult golden_section_max(F&& f, double lo, double hi, double xtol = 1e-8,
                                 int max_iter = 200) {
  auto r = golden_section_min([&](double x) { return -f(x); }, lo, hi, xtol, max_iter);
  return {r.x, -r.value};
}

}  // namespace theta_bounds
