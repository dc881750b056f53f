// Self-check machinery: pointwise residual checks, exhaustive classification
// cross-validation, the shift inequality for the weighted sup norm, sup and
// growth scans with their verdicts, and the JSON report suites.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <theta_bounds/theta_bounds.hpp>

using namespace theta_bounds;
using Catch::Matchers::WithinAbs;

namespace {
TorusPair pr(long long a1, long long a2, long long b1, long long b2) {
  return make_torus_pair(Rational(a1, a2), Rational(b1, b2));
}
}  // namespace

TEST_CASE("normalized sum and theta modulus residuals", "[check]") {
  // pinned configurations; residuals sit far below the advertised budgets
  REQUIRE(check_identity(gaussian_cutoff(), 20, 0.37, {0.5}, {1.0 / 6}) < 1e-9);
  REQUIRE(check_identity(gaussian_cutoff(), 1, 0.37, {0.5}, {1.0 / 6}) < 1e-9);
  REQUIRE(check_identity(sharp_indicator(), 17, 0.81, {1.0 / 3}, {2.0 / 7}) < 1e-12);
  REQUIRE(check_identity(gaussian_cutoff(2), 12, 0.6, {0.3, 0.7}, {0.2, 0.9}) < 1e-9);
}

TEST_CASE("modulus invariance residuals under the group generators", "[check]") {
  IwasawaPoint pinned{0.3, 0.7, 0.0, {0.41}, {0.13}};
  REQUIRE(check_invariance(gaussian_cutoff(), pinned, rho2(1)) < 1e-8);
  REQUIRE(check_invariance(gaussian_cutoff(), {0.2, 0.05, 0.0, {0.3}, {0.6}}, rho1(1)) <
          1e-8);
  REQUIRE(check_invariance(gaussian_cutoff(), pinned, torus_translation({3}, {-2})) <
          1e-10);
}

TEST_CASE("reduction preserves the modulus", "[check]") {
  // deep in the cusp
  REQUIRE(check_reduction({std::sqrt(2.0) - 1, 1e-4, 0.0, {0.62}, {0.0}}) < 1e-8);
  // already inside the fundamental domain: the word is empty, residual exact 0
  REQUIRE(check_reduction({0.9, 1.3, 1.0, {0.25}, {0.75}}) == 0.0);
  // lifts of normalized sums land at y = 1/N^2 and reduce cleanly
  REQUIRE(check_reduction(horocycle_lift(37, 1.7, {2.0 / 5}, {3.0 / 7})) < 1e-7);
}

TEST_CASE("closed-form classification agrees with the orbit oracle", "[check]") {
  ClassificationReport rep = check_classification(12);
  REQUIRE(rep.q_max == 12);
  REQUIRE(rep.pairs_checked == 527);
  REQUIRE(rep.mismatches.empty());
  REQUIRE(classify_pair(Rational(1, 2), Rational(1, 6)).good);
  REQUIRE_THROWS_AS(check_classification(1), std::invalid_argument);
}

TEST_CASE("shift inequality holds across random phase-space shifts", "[check]") {
  KappaShiftReport rep = check_kappa_shift(gaussian_cutoff(), 25);
  REQUIRE(rep.trials == 25);
  REQUIRE(rep.violations == 0);
  REQUIRE(rep.max_ratio > 0.0);
  REQUIRE(rep.max_ratio <= 1.0);
  REQUIRE_THROWS_AS(check_kappa_shift(gaussian_cutoff(), 0), std::invalid_argument);
}

TEST_CASE("sup scan certifies a good pair as bounded", "[scan]") {
  ScanResult res = sup_scan(pr(1, 2, 1, 6), {0.2, 0.05, 1e-3, 1e-5}, 0.0, 4.0, 400);
  REQUIRE(res.verdict == Verdict::bounded);
  REQUIRE(res.bound.has_value());
  // (1/2, 1/6) has conductor m = 3, so the bound is the m = 3 constant
  REQUIRE_THAT(*res.bound, WithinAbs(theta3_constant(3).constant, 1e-9));
  REQUIRE(res.sup_values.size() == 4);
  for (double s : res.sup_values) {
    REQUIRE(s > 0.5);
    REQUIRE(s < 2.0);  // observed sups hover near 1.1, far under the bound
    REQUIRE(s <= *res.bound);
  }
  REQUIRE(res.samples == 400);
  REQUIRE(res.x_lo == 0.0);
  REQUIRE(res.x_hi == 4.0);
}

TEST_CASE("sup scan flags a bad pair as growing", "[scan]") {
  std::vector<double> scales;
  for (int N : {100, 200, 300, 400})
    scales.push_back(1.0 / (static_cast<double>(N) * N));
  ScanResult res = sup_scan(pr(1, 2, 1, 3), scales, 0.2, 0.23, 400);
  REQUIRE(res.verdict == Verdict::growing);
  REQUIRE(!res.bound.has_value());
  for (std::size_t i = 1; i < res.sup_values.size(); ++i)
    REQUIRE(res.sup_values[i] > 1.05 * res.sup_values[i - 1]);
}

TEST_CASE("two scales cannot certify growth", "[scan]") {
  ScanResult res = sup_scan(pr(1, 2, 1, 3), {0.1, 0.01}, 0.2, 0.23, 100);
  REQUIRE(res.verdict == Verdict::inconclusive);
  REQUIRE_THROWS_AS(sup_scan(pr(1, 2, 1, 3), {0.1, 0.01}, 0.2, 0.23, 50),
                    std::invalid_argument);
}

TEST_CASE("growth exponents separate square-root from linear regimes", "[scan]") {
  const std::vector<int> Ns{64, 128, 256, 512, 1024};
  GrowthFit half = growth_exponent_scan(pr(1, 2, 1, 2), Ns, 0.0, 0.02, 201);
  REQUIRE_THAT(half.slope, WithinAbs(0.5593, 5e-3));
  REQUIRE(half.slope <= 0.6);

  GrowthFit integer = growth_exponent_scan(pr(0, 1, 0, 1), Ns, 0.0, 0.02, 201);
  REQUIRE_THAT(integer.slope, WithinAbs(1.0, 1e-6));  // sup attained at x = 0
  REQUIRE(integer.slope >= 0.8);
  REQUIRE(integer.sup_values.size() == Ns.size());
  for (std::size_t i = 0; i < Ns.size(); ++i)
    REQUIRE_THAT(integer.sup_values[i], WithinAbs(static_cast<double>(Ns[i]), 1e-6));

  REQUIRE_THROWS_AS(growth_exponent_scan(pr(0, 1, 0, 1), {64}, 0.0, 0.02, 201),
                    std::invalid_argument);
}

TEST_CASE("report suites pass and carry the fixed schema", "[suite]") {
  nlohmann::json identity = suite_identity();
  REQUIRE(identity.at("suite") == "identity");
  REQUIRE(identity.at("items").size() == 38);
  REQUIRE(report_all_pass(identity));

  nlohmann::json invariance = suite_invariance();
  REQUIRE(invariance.at("items").size() == 41);
  REQUIRE(report_all_pass(invariance));

  nlohmann::json reduction = suite_reduction();
  REQUIRE(reduction.at("items").size() == 27);
  REQUIRE(report_all_pass(reduction));

  nlohmann::json classify = suite_classify(8);
  REQUIRE(classify.at("items").size() == 1);
  REQUIRE(report_all_pass(classify));

  nlohmann::json kappa = suite_kappa();
  REQUIRE(kappa.at("items").size() == 8);
  REQUIRE(report_all_pass(kappa));

  nlohmann::json sup_good = suite_sup(pr(1, 2, 1, 6), 400);
  REQUIRE(report_all_pass(sup_good));
  nlohmann::json sup_bad = suite_sup(pr(1, 2, 1, 3), 400);
  REQUIRE(report_all_pass(sup_bad));

  nlohmann::json growth = suite_growth(pr(1, 2, 1, 2));
  REQUIRE(report_all_pass(growth));

  // schema: every item has the five keys, the summary has the four counters
  for (const auto& item : identity.at("items")) {
    REQUIRE(item.contains("name"));
    REQUIRE(item.contains("inputs"));
    REQUIRE(item.contains("observed"));
    REQUIRE(item.contains("threshold"));
    REQUIRE(item.contains("pass"));
  }
  const nlohmann::json& s = identity.at("summary");
  REQUIRE(s.at("total").get<int>() == 38);
  REQUIRE(s.at("passed").get<int>() + s.at("failed").get<int>() == 38);
  REQUIRE(s.at("pass").get<bool>());
}

TEST_CASE("seeded randomness is reproducible", "[rng]") {
  REQUIRE(default_seed == 0x5EED);
  std::mt19937_64 a = make_rng(123), b = make_rng(123);
  for (int i = 0; i < 5; ++i) REQUIRE(a() == b());
  REQUIRE(make_rng(1)() != make_rng(2)());

  std::mt19937_64 rng = make_rng();
  for (int i = 0; i < 100; ++i) {
    Rational r = random_rational(rng, 8);
    REQUIRE(r >= 0);
    REQUIRE(r < 1);
    REQUIRE(denominator(r) <= 8);
  }
}
