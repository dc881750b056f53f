#pragma once

// Orbits of Gamma_theta = <S, T^2> on the rational torus (Q/Z)^2, the exact
// first minimum m_1 (and its coupled k-dimensional version), and the
// good/bad classification of rational pairs.
//
// Generator images on (xi1, xi2) mod 1:
//   S   : (xi1, xi2) -> (-xi2,  xi1)
//   T^2 : (xi1, xi2) -> (xi1 + 2 xi2, xi2)
// Integer translations are absorbed by the mod-1 reduction.  Forward closure
// already suffices (S has order 4 and T^2 preserves the (1/q)Z^2 lattice,
// so the action factors through a finite group), but the inverse maps are
// applied as well so closure never depends on that argument.

#include <array>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "theta_bounds/rational.hpp"

namespace theta_bounds {

struct TorusPair {
  Rational alpha, beta;  // both in [0,1)
};

inline bool operator==(const TorusPair& l, const TorusPair& r) {
  return l.alpha == r.alpha && l.beta == r.beta;
}

inline bool operator<(const TorusPair& l, const TorusPair& r) {
  if (l.alpha != r.alpha) return l.alpha < r.alpha;
  return l.beta < r.beta;
}

inline TorusPair make_torus_pair(const Rational& alpha, const Rational& beta) {
  return {mod1(alpha), mod1(beta)};
}

struct OrbitRecord {
  TorusPair seed;
  std::vector<TorusPair> points;          // sorted, unique
  std::vector<TorusPair> U;               // points with xi2 = 0
  std::vector<TorusPair> Vplus, Vminus;   // xi2 = xi1 +- 1/2; one set mod 1,
                                          // reported under both labels
  Rational m1;                            // min over points of
                                          // min(theta(xi2), theta(xi2-xi1+1/2))
};

inline OrbitRecord gamma_theta_orbit(const TorusPair& seed_in) {
  TorusPair seed = make_torus_pair(seed_in.alpha, seed_in.beta);
  std::set<TorusPair> seen;
  std::vector<TorusPair> stack{seed};
  seen.insert(seed);
  while (!stack.empty()) {
    TorusPair p = stack.back();
    stack.pop_back();
    const TorusPair images[4] = {
        make_torus_pair(-p.beta, p.alpha),               // S
        make_torus_pair(p.alpha + 2 * p.beta, p.beta),   // T^2
        make_torus_pair(p.beta, -p.alpha),               // S^{-1}
        make_torus_pair(p.alpha - 2 * p.beta, p.beta),   // T^{-2}
    };
    for (const auto& q : images)
      if (seen.insert(q).second) stack.push_back(q);
  }

  OrbitRecord rec;
  rec.seed = seed;
  rec.points.assign(seen.begin(), seen.end());
  const Rational half(1, 2);
  std::optional<Rational> best;
  for (const auto& p : rec.points) {
    Rational d1 = dist_to_nearest_int(p.beta);
    Rational d2 = dist_to_nearest_int(p.beta - p.alpha + half);
    Rational d = d1 < d2 ? d1 : d2;
    if (!best || d < *best) best = d;
    if (p.beta == 0) rec.U.push_back(p);
    if (d2 == 0) {
      rec.Vplus.push_back(p);
      rec.Vminus.push_back(p);
    }
  }
  rec.m1 = *best;
  return rec;
}

inline Rational m1_exact(const Rational& alpha, const Rational& beta) {
  return gamma_theta_orbit(make_torus_pair(alpha, beta)).m1;
}

// m1 of all four sign combinations: (a,b), (a,-b), (-a,b), (-a,-b)
inline std::array<Rational, 4> symmetry_m1(const Rational& alpha, const Rational& beta) {
  return {m1_exact(alpha, beta), m1_exact(alpha, -beta),
          m1_exact(-alpha, beta), m1_exact(-alpha, -beta)};
}

// Coupled orbit for vector pairs: the SL(2) word is shared across components
// (the group is Gamma_theta ⋉ Z^{2k}), so states are 2k-tuples closed under
// the diagonal generator action.  Returns the exact squared minimum of
// min(theta_k(xi2), theta_k(xi2 - xi1 + s))^2, s = (1/2,...,1/2).
inline Rational mk_exact_squared(const std::vector<Rational>& alpha_vec,
                                 const std::vector<Rational>& beta_vec) {
  if (alpha_vec.size() != beta_vec.size() || alpha_vec.empty())
    throw std::invalid_argument("mk_exact: vectors must be nonempty and of equal length");
  const std::size_t k = alpha_vec.size();

  using State = std::vector<Rational>;  // (xi1..., xi2...)
  State seed(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    seed[i] = mod1(alpha_vec[i]);
    seed[k + i] = mod1(beta_vec[i]);
  }

  std::set<State> seen{seed};
  std::vector<State> stack{seed};
  auto push = [&](const State& s) {
    if (seen.insert(s).second) stack.push_back(s);
  };
  while (!stack.empty()) {
    State p = stack.back();
    stack.pop_back();
    State s_img(2 * k), t_img(2 * k), si_img(2 * k), ti_img(2 * k);
    for (std::size_t i = 0; i < k; ++i) {
      s_img[i] = mod1(-p[k + i]);
      s_img[k + i] = p[i];
      t_img[i] = mod1(p[i] + 2 * p[k + i]);
      t_img[k + i] = p[k + i];
      si_img[i] = p[k + i];
      si_img[k + i] = mod1(-p[i]);
      ti_img[i] = mod1(p[i] - 2 * p[k + i]);
      ti_img[k + i] = p[k + i];
    }
    push(s_img);
    push(t_img);
    push(si_img);
    push(ti_img);
  }

  const Rational half(1, 2);
  std::optional<Rational> best;
  std::vector<Rational> xi2(k), shifted(k);
  for (const auto& p : seen) {
    for (std::size_t i = 0; i < k; ++i) {
      xi2[i] = p[k + i];
      shifted[i] = p[k + i] - p[i] + half;
    }
    Rational d1 = dist_to_lattice_squared(xi2);
    Rational d2 = dist_to_lattice_squared(shifted);
    Rational d = d1 < d2 ? d1 : d2;
    if (!best || d < *best) best = d;
  }
  return *best;
}

inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  BigInt n = numerator(r), d = denominator(r);
  BigInt rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
  if (rn * rn == n && rd * rd == d) return Rational(rn, rd);
  return std::nullopt;
}

// Exact m_k when the minimum is rational (always the case for k = 1); for
// k >= 2 the Euclidean minimum may be sqrt(rational), in which case callers
// must use mk_exact_squared.
inline Rational mk_exact(const std::vector<Rational>& alpha_vec,
                         const std::vector<Rational>& beta_vec) {
  Rational sq = mk_exact_squared(alpha_vec, beta_vec);
  if (auto root = exact_sqrt(sq)) return *root;
  throw std::domain_error("mk_exact: minimum is irrational; use mk_exact_squared");
}

struct PairClass {
  long long a = 0, b = 0, q = 1;
  bool good = false;
  std::optional<long long> m;  // q/2 when q is even
  std::string reason;          // empty iff good
};

// (alpha, beta) = (a/q, b/q) mod 1 with gcd(a,b,q) = 1; good iff a, b odd,
// q = 2m, m odd.  Integer pairs (q = 1) sit on L_U and are bad.
inline PairClass classify_pair(const Rational& alpha_in, const Rational& beta_in) {
  Rational alpha = mod1(alpha_in), beta = mod1(beta_in);
  BigInt q_big = boost::multiprecision::lcm(denominator(alpha), denominator(beta));
  if (q_big > BigInt(1) << 62)
    throw std::overflow_error("classify_pair: denominator exceeds machine range");
  long long q = q_big.convert_to<long long>();
  long long a = BigInt(numerator(alpha) * (q_big / denominator(alpha))).convert_to<long long>();
  long long b = BigInt(numerator(beta) * (q_big / denominator(beta))).convert_to<long long>();

  PairClass out;
  out.a = a;
  out.b = b;
  out.q = q;
  if (q % 2 == 0) out.m = q / 2;
  if (q == 1) {
    out.reason = "orbit meets L_U";
  } else if (a % 2 == 0) {
    out.reason = "a is even";
  } else if (b % 2 == 0) {
    out.reason = "b is even";
  } else if (q % 2 != 0) {
    out.reason = "q is odd";
  } else if ((q / 2) % 2 == 0) {
    out.reason = "m = q/2 is even";
  } else {
    out.good = true;
  }
  return out;
}

// J_2(m) = m^2 prod_{p | m} (1 - p^{-2}), exact via trial-division
// factorization.
inline long long jordan_totient_J2(long long m) {
  if (m < 1) throw std::invalid_argument("jordan_totient_J2: m must be >= 1");
  if (m > 1'000'000'000) throw std::invalid_argument("jordan_totient_J2: m too large");
  long long res = m * m;
  long long rest = m;
  for (long long p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    res = res / (p * p) * (p * p - 1);
  }
  if (rest > 1) res = res / (rest * rest) * (rest * rest - 1);
  return res;
}

// All good pairs (a/2m, b/2m): a, b odd in [0, 2m), gcd(a,b,m) = 1; exactly
// J_2(m) of them.
inline std::vector<TorusPair> enumerate_good_pairs(long long m) {
  if (m < 1 || m % 2 == 0)
    throw std::invalid_argument("enumerate_good_pairs: m must be odd and positive");
  std::vector<TorusPair> out;
  for (long long a = 1; a < 2 * m; a += 2)
    for (long long b = 1; b < 2 * m; b += 2)
      if (std::gcd(std::gcd(a, b), m) == 1)
        out.push_back(make_torus_pair(Rational(a, 2 * m), Rational(b, 2 * m)));
  return out;
}

}  // namespace theta_bounds
