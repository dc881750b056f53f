#pragma once

// Executable reproductions of the library's headline claims: the sum/theta
// identity, invariance of the theta modulus under the generator group,
// reduction consistency, the bounded/growing dichotomy of the renormalized
// classical theta curve, the brute-force pair classification, and the
// weight-norm shift inequality.  Every suite is deterministic given its seed
// and grid, parallelizes only across independent slots, and serializes to
// the JSON report shape { suite, items: [...], summary }.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "theta_bounds/constants.hpp"
#include "theta_bounds/kappa.hpp"
#include "theta_bounds/orbit.hpp"
#include "theta_bounds/parallel.hpp"
#include "theta_bounds/reduce.hpp"
#include "theta_bounds/theta.hpp"

namespace theta_bounds {

inline constexpr std::uint64_t default_seed = 0x5EED;

inline std::mt19937_64 make_rng(std::uint64_t seed = default_seed) {
  return std::mt19937_64(seed);
}

inline Rational random_rational(std::mt19937_64& rng, long long q_max) {
  std::uniform_int_distribution<long long> qd(1, q_max);
  long long q = qd(rng);
  std::uniform_int_distribution<long long> ad(0, q - 1);
  return Rational(ad(rng), q);
}

// ---------- pointwise checks ----------

// | N^{-k/2} |S_N| - |Theta(x + i/N^2, 0; (alpha + beta x, 0))| |
inline double check_identity(const Cutoff& f, int N, double x,
                             const std::vector<double>& alpha,
                             const std::vector<double>& beta,
                             const TruncationBudget& budget = {}) {
  double lhs = std::pow(static_cast<double>(N), -static_cast<double>(f.k) / 2.0) *
               std::abs(weyl_sum(f, N, x, alpha, beta));
  double rhs = theta_modulus(f, horocycle_lift(N, x, alpha, beta), budget);
  return std::fabs(lhs - rhs);
}

inline double check_invariance(const Cutoff& f, const IwasawaPoint& p, const GElem& g,
                               const TruncationBudget& budget = {}) {
  return std::fabs(theta_modulus(f, act(g, p), budget) - theta_modulus(f, p, budget));
}

inline double check_reduction(const IwasawaPoint& p,
                              const Cutoff& f,
                              const TruncationBudget& budget = {}) {
  ReductionResult r = reduce_to_fundamental_domain(p);
  if (!in_fundamental_domain(r.reduced, 1e-9))
    throw ReductionError("check_reduction: reduced point rejected", r.word);
  return std::fabs(theta_modulus(f, p, budget) - theta_modulus(f, r.reduced, budget));
}

inline double check_reduction(const IwasawaPoint& p) {
  return check_reduction(p, gaussian_cutoff(p.k()));
}

// ---------- scans ----------

enum class Verdict { bounded, growing, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::bounded: return "bounded";
    case Verdict::growing: return "growing";
    default: return "inconclusive";
  }
}

struct ScanResult {
  TorusPair pair;
  std::vector<double> scales;      // eps per scale, aligned with sup_values
  double x_lo = 0, x_hi = 0;
  std::size_t samples = 0;
  std::vector<double> sup_values;
  std::optional<double> bound;     // theta3 constant when the pair is good
  Verdict verdict = Verdict::inconclusive;
};

// Grid sup of eps^{1/4} |theta3(alpha + beta x; x + i eps)| per scale.  The
// grid sup under-estimates the true sup, which is conservative for the
// bounded verdict; growing therefore additionally demands strict > 5%
// increase per step across at least 3 scales (ordered by shrinking eps).
inline ScanResult sup_scan(const TorusPair& pair, const std::vector<double>& scales,
                           double x_lo, double x_hi, std::size_t samples) {
  if (samples < 100) throw std::invalid_argument("sup_scan: need samples >= 100");
  ScanResult res;
  res.pair = make_torus_pair(pair.alpha, pair.beta);
  res.scales = scales;
  res.x_lo = x_lo;
  res.x_hi = x_hi;
  res.samples = samples;

  PairClass cls = classify_pair(pair.alpha, pair.beta);
  if (cls.good && cls.m)
    res.bound = theta3_constant(static_cast<int>(*cls.m)).constant;

  const double alpha = to_double(res.pair.alpha);
  const double beta = to_double(res.pair.beta);
  for (double eps : scales) {
    std::vector<double> vals(samples);
    parallel_for(samples, [&](std::size_t i) {
      double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) /
                            static_cast<double>(samples - 1);
      vals[i] = theta3_scaled_modulus(alpha, beta, x, eps, 1e-9);
    });
    res.sup_values.push_back(*std::max_element(vals.begin(), vals.end()));
  }

  bool below = res.bound.has_value();
  for (double s : res.sup_values)
    if (!res.bound || s > *res.bound) below = false;
  if (below) {
    res.verdict = Verdict::bounded;
    return res;
  }

  std::vector<std::size_t> order(scales.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scales[a] > scales[b]; });
  bool growing = order.size() >= 3;
  for (std::size_t i = 0; i + 1 < order.size() && growing; ++i)
    growing = res.sup_values[order[i + 1]] > 1.05 * res.sup_values[order[i]];
  res.verdict = growing ? Verdict::growing : Verdict::inconclusive;
  return res;
}

struct GrowthFit {
  std::vector<int> N_values;
  std::vector<double> sup_values;  // sup_x |S_N| per N, flat (sharp) cutoff
  double slope = 0;                // least-squares slope of log sup vs log N
  double intercept = 0;
};

inline GrowthFit growth_exponent_scan(const TorusPair& pair, const std::vector<int>& N_list,
                                      double x_lo, double x_hi,
                                      std::size_t samples = 201) {
  if (N_list.size() < 2)
    throw std::invalid_argument("growth_exponent_scan: need >= 2 values of N");
  if (samples < 2) throw std::invalid_argument("growth_exponent_scan: need >= 2 samples");
  GrowthFit fit;
  fit.N_values = N_list;
  const Cutoff flat = sharp_indicator();
  const std::vector<double> alpha{to_double(mod1(pair.alpha))};
  const std::vector<double> beta{to_double(mod1(pair.beta))};
  for (int N : N_list) {
    std::vector<double> vals(samples);
    parallel_for(samples, [&](std::size_t i) {
      double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) /
                            static_cast<double>(samples - 1);
      vals[i] = std::abs(weyl_sum(flat, N, x, alpha, beta));
    });
    fit.sup_values.push_back(*std::max_element(vals.begin(), vals.end()));
  }
  double su = 0, sv = 0, suu = 0, suv = 0;
  const double n = static_cast<double>(N_list.size());
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    double u = std::log(static_cast<double>(N_list[i]));
    double v = std::log(std::fmax(fit.sup_values[i], 1e-300));
    su += u, sv += v, suu += u * u, suv += u * v;
  }
  fit.slope = (n * suv - su * sv) / (n * suu - su * su);
  fit.intercept = (sv - fit.slope * su) / n;
  return fit;
}

// ---------- exhaustive reports ----------

struct ClassificationReport {
  int q_max = 0;
  long long pairs_checked = 0;
  std::vector<TorusPair> mismatches;  // closed-form label != orbit oracle
};

// For every (a/q, b/q) with gcd(a, b, q) = 1 and 1 < q <= q_max, compares the
// closed-form classification against the orbit-computed oracle
// "no orbit point meets the divergence lines" (U and V both empty).
inline ClassificationReport check_classification(int q_max) {
  if (q_max < 2) throw std::invalid_argument("check_classification: need q_max >= 2");
  ClassificationReport rep;
  rep.q_max = q_max;
  struct Slot {
    long long checked = 0;
    std::vector<TorusPair> bad;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(q_max) + 1);
  parallel_for(static_cast<std::size_t>(q_max - 1), [&](std::size_t idx) {
    long long q = static_cast<long long>(idx) + 2;
    Slot& slot = slots[static_cast<std::size_t>(q)];
    for (long long a = 0; a < q; ++a)
      for (long long b = 0; b < q; ++b) {
        if (std::gcd(std::gcd(a, b), q) != 1) continue;
        TorusPair p{Rational(a, q), Rational(b, q)};
        PairClass cls = classify_pair(p.alpha, p.beta);
        OrbitRecord orbit = gamma_theta_orbit(p);
        bool oracle_good =
            orbit.U.empty() && orbit.Vplus.empty() && orbit.Vminus.empty();
        ++slot.checked;
        if (cls.good != oracle_good) slot.bad.push_back(p);
      }
  });
  for (const Slot& s : slots) {
    rep.pairs_checked += s.checked;
    rep.mismatches.insert(rep.mismatches.end(), s.bad.begin(), s.bad.end());
  }
  return rep;
}

struct KappaShiftReport {
  int trials = 0;
  int violations = 0;
  double max_ratio = 0;  // largest observed kappa(shifted) / bound
};

// kappa_eta(W(a,b) f) <= 3^eta (1 + a^2 + b^2)^{eta/2} kappa_eta(f) for
// random shifts (a, b) in [-3,3]^2 and eta in {1.5, 2, 3}.
inline KappaShiftReport check_kappa_shift(const Cutoff& f, int trials,
                                          std::uint64_t seed = default_seed) {
  if (trials < 1) throw std::invalid_argument("check_kappa_shift: need trials >= 1");
  KappaShiftReport rep;
  rep.trials = trials;
  std::mt19937_64 rng = make_rng(seed);
  std::uniform_real_distribution<double> shift(-3.0, 3.0);
  const double etas[] = {1.5, 2.0, 3.0};
  for (int t = 0; t < trials; ++t) {
    double a = shift(rng), b = shift(rng);
    Cutoff shifted = weyl_heis_act(std::vector<double>(f.k, a),
                                   std::vector<double>(f.k, b), f);
    for (double eta : etas) {
      double lhs = kappa_eta(shifted, eta).value;
      double rhs = kappa_shift_bound(eta, std::vector<double>(f.k, a),
                                     std::vector<double>(f.k, b),
                                     kappa_eta(f, eta).value);
      rep.max_ratio = std::fmax(rep.max_ratio, lhs / rhs);
      if (lhs > rhs) ++rep.violations;
    }
  }
  return rep;
}

// ---------- JSON suites ----------

namespace detail {

inline nlohmann::json report_item(const std::string& name, nlohmann::json inputs,
                                  nlohmann::json observed, nlohmann::json threshold,
                                  bool pass) {
  return {{"name", name},
          {"inputs", std::move(inputs)},
          {"observed", std::move(observed)},
          {"threshold", std::move(threshold)},
          {"pass", pass}};
}

inline nlohmann::json finish_report(const std::string& suite, nlohmann::json items) {
  std::size_t total = items.size(), passed = 0;
  for (const auto& it : items)
    if (it.at("pass").get<bool>()) ++passed;
  return {{"suite", suite},
          {"items", std::move(items)},
          {"summary",
           {{"total", total},
            {"passed", passed},
            {"failed", total - passed},
            {"pass", passed == total}}}};
}

}  // namespace detail

inline bool report_all_pass(const nlohmann::json& report) {
  return report.at("summary").at("pass").get<bool>();
}

inline nlohmann::json suite_identity(std::uint64_t seed = default_seed) {
  nlohmann::json items = nlohmann::json::array();
  auto run = [&](const std::string& name, const Cutoff& f, int N, double x,
                 std::vector<double> alpha, std::vector<double> beta, double tol) {
    double r = check_identity(f, N, x, alpha, beta);
    items.push_back(detail::report_item(
        name, {{"N", N}, {"x", x}, {"alpha", alpha}, {"beta", beta}}, r, tol, r < tol));
  };
  run("gaussian pinned", gaussian_cutoff(1), 20, 0.37, {0.5}, {1.0 / 6}, 1e-9);
  run("gaussian N=1", gaussian_cutoff(1), 1, 0.37, {0.5}, {1.0 / 6}, 1e-9);
  run("sharp pinned", sharp_indicator(), 17, 0.81, {1.0 / 3}, {2.0 / 7}, 1e-12);

  std::mt19937_64 rng = make_rng(seed);
  std::uniform_real_distribution<double> xs(-2.0, 2.0), frac(0.0, 1.0);
  std::uniform_int_distribution<int> n1(1, 50), n2(1, 12), n3(1, 200);
  for (int t = 0; t < 20; ++t) {
    int N = n1(rng);
    double x = xs(rng), a = frac(rng), b = frac(rng);
    run("gaussian k=1 trial " + std::to_string(t), gaussian_cutoff(1), N, x, {a}, {b},
        1e-9);
  }
  for (int t = 0; t < 5; ++t) {
    int N = n2(rng);
    double x = xs(rng);
    double a0 = frac(rng), a1 = frac(rng), b0 = frac(rng), b1 = frac(rng);
    run("gaussian k=2 trial " + std::to_string(t), gaussian_cutoff(2), N, x, {a0, a1},
        {b0, b1}, 1e-9);
  }
  for (int t = 0; t < 10; ++t) {
    int N = n3(rng);
    double x = xs(rng), a = frac(rng), b = frac(rng);
    run("sharp trial " + std::to_string(t), sharp_indicator(), N, x, {a}, {b}, 1e-12);
  }
  return detail::finish_report("identity", std::move(items));
}

inline nlohmann::json suite_invariance(std::uint64_t seed = default_seed) {
  nlohmann::json items = nlohmann::json::array();
  auto run = [&](const std::string& name, const Cutoff& f, const IwasawaPoint& p,
                 const GElem& g, double tol) {
    double r = check_invariance(f, p, g);
    items.push_back(detail::report_item(
        name, {{"x", p.x}, {"y", p.y}, {"phi", p.phi}, {"xi1", p.xi1}, {"xi2", p.xi2}},
        r, tol, r < tol));
  };
  std::mt19937_64 rng = make_rng(seed);
  std::uniform_real_distribution<double> xs(-3.0, 3.0), frac(0.0, 1.0),
      phis(0.0, two_pi), logy(std::log(0.05), std::log(5.0));
  std::uniform_int_distribution<int> mn(-5, 5);
  const Cutoff g1 = gaussian_cutoff(1);

  double pinned_xi1 = frac(rng), pinned_xi2 = frac(rng);
  IwasawaPoint pinned{0.3, 0.7, 0.0, {pinned_xi1}, {pinned_xi2}};
  run("rho2 pinned", g1, pinned, rho2(1), 1e-8);
  run("rho1 pinned", g1, {0.2, 0.05, 0.0, {0.3}, {0.6}}, rho1(1), 1e-8);
  run("translation pinned", g1, pinned, torus_translation({3}, {-2}), 1e-10);

  for (int t = 0; t < 10; ++t) {
    double px = xs(rng), py = std::exp(logy(rng)), pphi = phis(rng);
    double x1 = frac(rng), x2 = frac(rng);
    IwasawaPoint p{px, py, pphi, {x1}, {x2}};
    std::string tag = " trial " + std::to_string(t);
    run("rho2" + tag, g1, p, rho2(1), 1e-10);
    run("rho1" + tag, g1, p, rho1(1), 1e-8);
    double m = static_cast<double>(mn(rng)), n = static_cast<double>(mn(rng));
    run("translation" + tag, g1, p, torus_translation({m}, {n}), 1e-10);
  }
  for (int t = 0; t < 4; ++t) {
    // compact cutoffs at phi = 0: rho2 and translations leave phi fixed
    double px = xs(rng), py = std::exp(logy(rng));
    double x1 = frac(rng), x2 = frac(rng);
    IwasawaPoint p{px, py, 0.0, {x1}, {x2}};
    const Cutoff f = (t % 2 == 0) ? smooth_ramp(8) : sharp_indicator();
    std::string tag = (t % 2 == 0 ? "ramp" : "sharp") + std::string(" trial ") +
                      std::to_string(t);
    run("rho2 " + tag, f, p, rho2(1), 1e-10);
    run("translation " + tag, f, p, torus_translation({1}, {-3}), 1e-10);
  }
  return detail::finish_report("invariance", std::move(items));
}

inline nlohmann::json suite_reduction(std::uint64_t seed = default_seed) {
  nlohmann::json items = nlohmann::json::array();
  auto run = [&](const std::string& name, const IwasawaPoint& p, double tol) {
    double r = check_reduction(p);
    items.push_back(detail::report_item(
        name, {{"x", p.x}, {"y", p.y}, {"phi", p.phi}, {"xi1", p.xi1}, {"xi2", p.xi2}},
        r, tol, r <= tol));
  };
  run("cusp pinch pinned", {std::sqrt(2.0) - 1, 1e-4, 0.0, {0.62}, {0.0}}, 1e-8);
  run("already reduced", {0.9, 1.3, 1.0, {0.25}, {0.75}}, 0.0);

  std::mt19937_64 rng = make_rng(seed);
  std::uniform_real_distribution<double> xs(-2.0, 4.0);
  std::uniform_int_distribution<int> Ns(5, 400);
  for (int t = 0; t < 25; ++t) {
    double alpha = to_double(random_rational(rng, 40));
    double beta = to_double(random_rational(rng, 40));
    int N = Ns(rng);
    double x = xs(rng);
    IwasawaPoint p = horocycle_lift(N, x, {alpha}, {beta});
    run("horocycle lift trial " + std::to_string(t), p, 1e-7);
  }
  return detail::finish_report("reduction", std::move(items));
}

inline nlohmann::json suite_classify(int q_max) {
  ClassificationReport rep = check_classification(q_max);
  nlohmann::json items = nlohmann::json::array();
  nlohmann::json bad = nlohmann::json::array();
  for (const TorusPair& p : rep.mismatches)
    bad.push_back({{"alpha", to_string(p.alpha)}, {"beta", to_string(p.beta)}});
  items.push_back(detail::report_item(
      "closed form vs orbit oracle",
      {{"q_max", rep.q_max}, {"pairs_checked", rep.pairs_checked}, {"mismatches", bad}},
      static_cast<double>(rep.mismatches.size()), 0.0, rep.mismatches.empty()));
  return detail::finish_report("classify", std::move(items));
}

inline nlohmann::json suite_kappa(std::uint64_t seed = default_seed, int trials = 50) {
  nlohmann::json items = nlohmann::json::array();
  for (double eta : {1.5, 2.0, 5.0, 8.0, 10.0}) {
    auto g = [&](double t) {
      return std::pow(1 + t * t, eta / 2) * std::exp(-pi_v * t * t);
    };
    double numeric = detail::scan_then_refine(g, 0.0, 12.0, 4096);
    double closed = kappa_eta(gaussian_cutoff(1), eta).value;
    double diff = std::fabs(closed - numeric);
    items.push_back(detail::report_item("closed form eta=" + std::to_string(eta),
                                        {{"eta", eta}}, diff, 1e-6, diff < 1e-6));
  }
  {
    Cutoff zero = weyl_heis_act({0.0}, {0.0}, gaussian_cutoff(1));
    double diff = std::fabs(kappa_eta(zero, 2.0).value -
                            kappa_eta(gaussian_cutoff(1), 2.0).value);
    items.push_back(detail::report_item("zero shift equality", {{"eta", 2.0}}, diff,
                                        1e-12, diff < 1e-12));
  }
  {
    Cutoff big = weyl_heis_act({0.0}, {10.0}, gaussian_cutoff(1));
    double ratio = kappa_eta(big, 2.0).value /
                   kappa_shift_bound(2.0, {0.0}, {10.0}, kappa_gaussian_closed(2.0));
    items.push_back(detail::report_item("large shift slack", {{"b", 10.0}}, ratio, 1.0,
                                        ratio <= 1.0));
  }
  KappaShiftReport rep = check_kappa_shift(gaussian_cutoff(1), trials, seed);
  items.push_back(detail::report_item(
      "shift inequality trials",
      {{"trials", rep.trials}, {"max_ratio", rep.max_ratio}},
      rep.violations, 0, rep.violations == 0));
  return detail::finish_report("kappa", std::move(items));
}

inline nlohmann::json suite_sup(const TorusPair& pair, std::size_t samples = 4000) {
  PairClass cls = classify_pair(pair.alpha, pair.beta);
  std::vector<double> scales;
  double x_lo, x_hi;
  if (cls.good) {
    scales = {0.2, 0.1, 0.05, 0.025};
    x_lo = 0.0;
    x_hi = 4.0;
  } else {
    for (int N : {100, 200, 300, 400})
      scales.push_back(1.0 / (static_cast<double>(N) * N));
    x_lo = 0.2;
    x_hi = 0.23;
  }
  ScanResult res = sup_scan(pair, scales, x_lo, x_hi, samples);
  nlohmann::json items = nlohmann::json::array();
  for (std::size_t i = 0; i < res.scales.size(); ++i) {
    bool ok = !res.bound || res.sup_values[i] <= *res.bound;
    items.push_back(detail::report_item(
        "scale eps=" + std::to_string(res.scales[i]),
        {{"eps", res.scales[i]}, {"x_lo", x_lo}, {"x_hi", x_hi}, {"samples", samples}},
        res.sup_values[i],
        res.bound ? nlohmann::json(*res.bound) : nlohmann::json(nullptr), ok));
  }
  std::string expected = cls.good ? "bounded" : "growing";
  items.push_back(detail::report_item(
      "verdict",
      {{"alpha", to_string(res.pair.alpha)}, {"beta", to_string(res.pair.beta)},
       {"classification", cls.good ? "good" : "bad"}},
      to_string(res.verdict), expected, to_string(res.verdict) == expected));
  return detail::finish_report("sup", std::move(items));
}

inline nlohmann::json suite_growth(const TorusPair& pair) {
  const std::vector<int> N_list{64, 128, 256, 512, 1024};
  GrowthFit fit = growth_exponent_scan(pair, N_list, 0.0, 0.02, 201);
  PairClass cls = classify_pair(pair.alpha, pair.beta);
  bool integer_pair = mod1(pair.alpha) == 0 && mod1(pair.beta) == 0;

  nlohmann::json items = nlohmann::json::array();
  for (std::size_t i = 0; i < N_list.size(); ++i)
    items.push_back(detail::report_item("sup N=" + std::to_string(N_list[i]),
                                        {{"N", N_list[i]}}, fit.sup_values[i], nullptr,
                                        true));
  if (cls.good) {
    items.push_back(detail::report_item(
        "slope (good pair, square-root regime)",
        {{"alpha", to_string(mod1(pair.alpha))}, {"beta", to_string(mod1(pair.beta))}},
        fit.slope, 0.6, fit.slope <= 0.6));
  } else if (integer_pair) {
    items.push_back(detail::report_item("slope (integer pair, linear peak at 0)",
                                        {{"alpha", "0"}, {"beta", "0"}}, fit.slope, 0.8,
                                        fit.slope >= 0.8));
  } else {
    items.push_back(detail::report_item(
        "slope (no calibrated expectation for this pair)",
        {{"alpha", to_string(mod1(pair.alpha))}, {"beta", to_string(mod1(pair.beta))}},
        fit.slope, nullptr, true));
  }
  return detail::finish_report("growth", std::move(items));
}

}  // namespace theta_bounds
