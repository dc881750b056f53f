#pragma once

// The group G = SL(2,R) ⋉ R^{2k} and its geometry.
//
// Conventions used throughout:
//   * Iwasawa decomposition M = n_x a_y k_phi with n_x = [[1,x],[0,1]],
//     a_y = diag(sqrt y, 1/sqrt y), k_phi = [[cos,-sin],[sin,cos]];
//     recovered in closed form by phi = atan2(c,d), y = 1/(c^2+d^2),
//     x = (ac+bd) y.
//   * Group law (M;v)(M';v') = (MM'; v + Mv'), where M acts on the
//     translation part v = (v1,v2) in R^k x R^k by
//     M.(v1,v2) = (a v1 + b v2, c v1 + d v2) coordinatewise.
//   * Left action on points: (M;w).(z,phi;xi) =
//     ((az+b)/(cz+d), phi + arg(cz+d); w + M xi).
//
// All values are immutable; every function is pure.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace theta_bounds {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline double mod_2pi(double t) {
  t = std::fmod(t, two_pi);
  if (t < 0) t += two_pi;
  return t == two_pi ? 0.0 : t;
}

struct Sl2Mat {
  double a = 1, b = 0, c = 0, d = 1;

  // Kahan's compensated 2x2 determinant: accurate to a few ulp of the true
  // value even when a*d and b*c cancel, as they do for parabolic elements
  // with large integer entries.
  double det() const {
    double w = b * c;
    double e = std::fma(-b, c, w);
    double f = std::fma(a, d, -w);
    return f + e;
  }

  // one multiplicative sqrt correction keeps |det - 1| <= 1e-12 across
  // arbitrarily long composition chains
  void renormalize() {
    double dt = det();
    if (!(dt > 0.0))
      throw std::invalid_argument("Sl2Mat: non-positive determinant");
    double s = 1.0 / std::sqrt(dt);
    a *= s;
    b *= s;
    c *= s;
    d *= s;
  }
};

inline Sl2Mat mul(const Sl2Mat& l, const Sl2Mat& r) {
  Sl2Mat out{l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
             l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  out.renormalize();
  return out;
}

inline Sl2Mat inverse(const Sl2Mat& m) { return {m.d, -m.b, -m.c, m.a}; }

inline Sl2Mat sl2_identity() { return {}; }
inline Sl2Mat sl2_S() { return {0, -1, 1, 0}; }
inline Sl2Mat sl2_T(double n) { return {1, n, 0, 1}; }

struct IwasawaTriple {
  double x, y, phi;
};

// Closed-form Iwasawa coordinates of M.  Throws for matrices whose
// determinant has drifted beyond tolerance.
inline IwasawaTriple iwasawa_decompose(const Sl2Mat& m) {
  if (std::abs(m.det() - 1.0) > 1e-9)
    throw std::invalid_argument("iwasawa_decompose: matrix is not unimodular");
  double y = 1.0 / (m.c * m.c + m.d * m.d);
  double x = (m.a * m.c + m.b * m.d) * y;
  double phi = mod_2pi(std::atan2(m.c, m.d));
  return {x, y, phi};
}

inline Sl2Mat iwasawa_compose(double x, double y, double phi) {
  double ry = std::sqrt(y);
  Sl2Mat nx{1, x, 0, 1};
  Sl2Mat ay{ry, 0, 0, 1 / ry};
  Sl2Mat kphi{std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi)};
  return mul(mul(nx, ay), kphi);
}

// Element (mat; v) of SL(2,R) ⋉ R^{2k}; the translation is stored split as
// v = (v1, v2), each of length k.
struct GElem {
  Sl2Mat mat;
  std::vector<double> v1, v2;

  std::size_t k() const { return v1.size(); }
};

inline void require_same_k(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("dimension mismatch between group data");
}

inline GElem identity_elem(std::size_t k) {
  return {sl2_identity(), std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
}

// (M;v)(M';v') = (MM'; v + Mv')
inline GElem compose(const GElem& g, const GElem& h) {
  require_same_k(g.k(), h.k());
  GElem out;
  out.mat = mul(g.mat, h.mat);
  out.v1.resize(g.k());
  out.v2.resize(g.k());
  for (std::size_t i = 0; i < g.k(); ++i) {
    out.v1[i] = g.v1[i] + g.mat.a * h.v1[i] + g.mat.b * h.v2[i];
    out.v2[i] = g.v2[i] + g.mat.c * h.v1[i] + g.mat.d * h.v2[i];
  }
  return out;
}

// (M;v)^{-1} = (M^{-1}; -M^{-1}v)
inline GElem inverse(const GElem& g) {
  GElem out;
  out.mat = inverse(g.mat);
  out.v1.resize(g.k());
  out.v2.resize(g.k());
  for (std::size_t i = 0; i < g.k(); ++i) {
    out.v1[i] = -(out.mat.a * g.v1[i] + out.mat.b * g.v2[i]);
    out.v2[i] = -(out.mat.c * g.v1[i] + out.mat.d * g.v2[i]);
  }
  return out;
}

// Generators.  rho1 = (S;0), rho2 = (T;(1/2,...,1/2 | 0)); the lattice
// subgroup is generated by gamma2 = (T^2;0), -I = rho1^2, and the integer
// translations (I;(m,n)).
inline GElem rho1(std::size_t k) {
  return {sl2_S(), std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
}

inline GElem rho2(std::size_t k) {
  return {sl2_T(1), std::vector<double>(k, 0.5), std::vector<double>(k, 0.0)};
}

inline GElem gamma2(std::size_t k) {
  return {sl2_T(2), std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
}

inline GElem neg_identity(std::size_t k) {
  return {{-1, 0, 0, -1}, std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
}

inline GElem torus_translation(const std::vector<double>& m, const std::vector<double>& n) {
  require_same_k(m.size(), n.size());
  return {sl2_identity(), m, n};
}

// Flows: geodesic(t) = (diag(e^{-t/2}, e^{t/2}); 0), horocycle(x) = (n_x; 0).
inline GElem geodesic(double t, std::size_t k = 1) {
  return {{std::exp(-t / 2), 0, 0, std::exp(t / 2)},
          std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
}

inline GElem horocycle(double x, std::size_t k = 1) {
  return {sl2_T(x), std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
}

// Point (z = x+iy, phi; xi1, xi2) of H x [0,2pi) x R^{2k}.
struct IwasawaPoint {
  double x = 0, y = 1, phi = 0;
  std::vector<double> xi1, xi2;

  std::size_t k() const { return xi1.size(); }
  std::complex<double> z() const { return {x, y}; }
};

inline IwasawaPoint base_point(std::size_t k) {
  return {0, 1, 0, std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
}

inline IwasawaPoint act(const GElem& g, const IwasawaPoint& p) {
  require_same_k(g.k(), p.k());
  std::complex<double> z = p.z();
  std::complex<double> czd = g.mat.c * z + g.mat.d;
  std::complex<double> zp = (g.mat.a * z + g.mat.b) / czd;
  IwasawaPoint out;
  out.x = zp.real();
  out.y = zp.imag();
  out.phi = mod_2pi(p.phi + std::arg(czd));
  out.xi1.resize(p.k());
  out.xi2.resize(p.k());
  for (std::size_t i = 0; i < p.k(); ++i) {
    out.xi1[i] = g.v1[i] + g.mat.a * p.xi1[i] + g.mat.b * p.xi2[i];
    out.xi2[i] = g.v2[i] + g.mat.c * p.xi1[i] + g.mat.d * p.xi2[i];
  }
  return out;
}

// Iwasawa coordinates of a group element, i.e. its image of the base point
// (i, 0; 0) under the left action.
inline IwasawaPoint point_of(const GElem& g) {
  IwasawaTriple t = iwasawa_decompose(g.mat);
  return {t.x, t.y, t.phi, g.v1, g.v2};
}

// The curve in Gamma\G along which the normalized Weyl sum is read off:
// (I;(alpha+beta x, 0)) n_x diag(1/N, N), which in Iwasawa coordinates is
// (x + i/N^2, phi = 0; xi1 = alpha + beta x, xi2 = 0).
inline IwasawaPoint horocycle_lift(double N, double x,
                                   const std::vector<double>& alpha,
                                   const std::vector<double>& beta) {
  require_same_k(alpha.size(), beta.size());
  if (!(N > 0)) throw std::invalid_argument("horocycle_lift: N must be positive");
  IwasawaPoint p;
  p.x = x;
  p.y = 1.0 / (N * N);
  p.phi = 0;
  p.xi1.resize(alpha.size());
  p.xi2.assign(alpha.size(), 0.0);
  for (std::size_t i = 0; i < alpha.size(); ++i) p.xi1[i] = alpha[i] + beta[i] * x;
  return p;
}

// Distance from v to the nearest point of Z^k (rounding each coordinate is
// exact for the Euclidean norm).
inline double theta_dist(const std::vector<double>& v) {
  double acc = 0;
  for (double c : v) {
    double d = c - std::nearbyint(c);
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace theta_bounds
