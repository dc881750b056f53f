// Exact rational orbits on the torus, the first-minimum functions, and the
// good/bad pair classification.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <theta_bounds/theta_bounds.hpp>

using namespace theta_bounds;

namespace {

Rational rat(long long n, long long d = 1) { return Rational(n, d); }

// generator images on (alpha, beta) mod 1, used as an independent oracle
TorusPair apply_S(const TorusPair& p) {
  return make_torus_pair(-p.beta, p.alpha);
}
TorusPair apply_T2(const TorusPair& p) {
  return make_torus_pair(p.alpha + 2 * p.beta, p.beta);
}

}  // namespace

TEST_CASE("rational parsing round trips and rejects junk", "[rational]") {
  REQUIRE(parse_rational("1/6") == rat(1, 6));
  REQUIRE(parse_rational("-1/3") == rat(-1, 3));
  REQUIRE(parse_rational("+2/4") == rat(1, 2));
  REQUIRE(parse_rational("7") == rat(7));
  REQUIRE(parse_rational("3/6") == rat(1, 2));
  REQUIRE_THROWS_AS(parse_rational(""), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_rational("nonsense"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_rational("1/"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_rational("/3"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("mod-1 reduction and exact lattice distances", "[rational]") {
  REQUIRE(mod1(rat(-1, 6)) == rat(5, 6));
  REQUIRE(mod1(rat(13, 6)) == rat(1, 6));
  REQUIRE(dist_to_nearest_int(rat(5, 6)) == rat(1, 6));
  REQUIRE(dist_to_nearest_int(rat(1, 2)) == rat(1, 2));
  REQUIRE(dist_to_lattice_squared({rat(1, 2), rat(9, 10)}) == rat(13, 50));
}

TEST_CASE("orbit of (1/6,1/6) is the known 8-point set", "[orbit]") {
  OrbitRecord rec = gamma_theta_orbit(make_torus_pair(rat(1, 6), rat(1, 6)));
  std::set<TorusPair> expected;
  auto add = [&](long long a1, long long a2, long long b1, long long b2) {
    expected.insert(make_torus_pair(rat(a1, a2), rat(b1, b2)));
  };
  add(1, 6, 1, 6);
  add(1, 6, 1, 2);
  add(1, 6, 5, 6);
  add(1, 2, 1, 6);
  add(1, 2, 5, 6);
  add(5, 6, 1, 6);
  add(5, 6, 1, 2);
  add(5, 6, 5, 6);
  std::set<TorusPair> got(rec.points.begin(), rec.points.end());
  REQUIRE(got == expected);
  REQUIRE(rec.m1 == rat(1, 6));
  REQUIRE(rec.U.empty());
  REQUIRE(rec.Vplus.empty());
  REQUIRE(rec.Vminus.empty());
}

TEST_CASE("fixed points and divergence-line seeds", "[orbit]") {
  OrbitRecord half = gamma_theta_orbit(make_torus_pair(rat(1, 2), rat(1, 2)));
  REQUIRE(half.points.size() == 1);
  REQUIRE(half.points[0] == make_torus_pair(rat(1, 2), rat(1, 2)));
  REQUIRE(half.m1 == rat(1, 2));

  OrbitRecord origin = gamma_theta_orbit(make_torus_pair(rat(0), rat(0)));
  REQUIRE(origin.points.size() == 1);
  REQUIRE(!origin.U.empty());
  REQUIRE(origin.m1 == rat(0));
}

TEST_CASE("orbits close under both generators", "[orbit]") {
  std::vector<TorusPair> seeds = {
      make_torus_pair(rat(1, 6), rat(1, 6)), make_torus_pair(rat(1, 2), rat(1, 6)),
      make_torus_pair(rat(2, 7), rat(3, 7)), make_torus_pair(rat(3, 10), rat(1, 10))};
  for (const auto& seed : seeds) {
    OrbitRecord rec = gamma_theta_orbit(seed);
    std::set<TorusPair> pts(rec.points.begin(), rec.points.end());
    for (const auto& p : rec.points) {
      REQUIRE(pts.count(apply_S(p)) == 1);
      REQUIRE(pts.count(apply_T2(p)) == 1);
    }
  }
}

TEST_CASE("orbit size and minimum are seed-position independent", "[orbit]") {
  OrbitRecord rec = gamma_theta_orbit(make_torus_pair(rat(2, 9), rat(5, 9)));
  for (const auto& p : rec.points) {
    OrbitRecord from_p = gamma_theta_orbit(p);
    REQUIRE(from_p.points.size() == rec.points.size());
    REQUIRE(from_p.m1 == rec.m1);
  }
}

TEST_CASE("first minimum on known pairs", "[orbit]") {
  REQUIRE(m1_exact(rat(1, 2), rat(1, 2)) == rat(1, 2));
  REQUIRE(m1_exact(rat(1, 6), rat(1, 6)) == rat(1, 6));
  REQUIRE(m1_exact(rat(1, 2), rat(1, 6)) == rat(1, 6));
  REQUIRE(m1_exact(rat(1, 3), rat(0)) == rat(0));
}

TEST_CASE("good pairs obey the 1/(2m) lower bound exactly", "[orbit]") {
  for (long long m : {1, 3, 5}) {
    for (const auto& p : enumerate_good_pairs(m)) {
      Rational v = m1_exact(p.alpha, p.beta);
      REQUIRE(v >= rat(1, 2 * m));
    }
  }
}

TEST_CASE("coupled minimum reduces to the scalar one when k = 1", "[orbit]") {
  std::vector<std::pair<Rational, Rational>> seeds = {
      {rat(1, 6), rat(1, 6)}, {rat(1, 2), rat(1, 6)}, {rat(2, 7), rat(3, 7)}};
  for (const auto& [a, b] : seeds) {
    REQUIRE(mk_exact({a}, {b}) == m1_exact(a, b));
  }
}

TEST_CASE("coupled minimum for two-component seeds", "[orbit]") {
  // seed whose shifted coordinate lands on the integer lattice immediately
  REQUIRE(mk_exact_squared({rat(1, 2), rat(0)}, {rat(0), rat(1, 2)}) == rat(0));
  REQUIRE(mk_exact({rat(1, 2), rat(0)}, {rat(0), rat(1, 2)}) == rat(0));

  // one component alone would be degenerate, but the Euclidean distance only
  // vanishes when every coordinate is integral, so the coupled minimum is
  // positive
  REQUIRE(mk_exact_squared({rat(1, 6), rat(0)}, {rat(1, 6), rat(0)}) == rat(1, 36));
  REQUIRE(mk_exact({rat(1, 6), rat(0)}, {rat(1, 6), rat(0)}) == rat(1, 6));

  // irrational minimum: exact square root unavailable
  REQUIRE(mk_exact_squared({rat(1, 6), rat(1, 6)}, {rat(1, 6), rat(1, 6)}) ==
          rat(1, 18));
  REQUIRE_THROWS_AS(mk_exact({rat(1, 6), rat(1, 6)}, {rat(1, 6), rat(1, 6)}),
                    std::domain_error);
}

TEST_CASE("coupled minimum dominates every component minimum", "[orbit]") {
  std::mt19937_64 rng(201);
  std::uniform_int_distribution<long long> uq(2, 8);
  std::uniform_int_distribution<long long> un(0, 7);
  for (int trial = 0; trial < 20; ++trial) {
    long long q1 = uq(rng), q2 = uq(rng);
    Rational a1(un(rng) % q1, q1), b1(un(rng) % q1, q1);
    Rational a2(un(rng) % q2, q2), b2(un(rng) % q2, q2);
    Rational coupled = mk_exact_squared({a1, a2}, {b1, b2});
    Rational c1 = m1_exact(a1, b1);
    Rational c2 = m1_exact(a2, b2);
    REQUIRE(coupled >= c1 * c1);
    REQUIRE(coupled >= c2 * c2);
  }
}

TEST_CASE("pair classification on reference pairs", "[classify]") {
  PairClass g1 = classify_pair(rat(1, 2), rat(1, 6));
  REQUIRE(g1.good);
  REQUIRE(g1.q == 6);
  REQUIRE(g1.m.has_value());
  REQUIRE(*g1.m == 3);
  REQUIRE(g1.reason.empty());

  PairClass b1 = classify_pair(rat(1, 2), rat(1, 3));
  REQUIRE(!b1.good);
  REQUIRE(b1.reason == "b is even");

  PairClass g2 = classify_pair(rat(1, 2), rat(1, 2));
  REQUIRE(g2.good);
  REQUIRE(*g2.m == 1);

  PairClass ints = classify_pair(rat(3), rat(2));
  REQUIRE(!ints.good);
  REQUIRE(ints.q == 1);
  REQUIRE(ints.reason == "orbit meets L_U");

  REQUIRE(!classify_pair(rat(1, 3), rat(2, 3)).good);    // q odd
  REQUIRE(!classify_pair(rat(1, 4), rat(3, 4)).good);    // m even
}

TEST_CASE("classification agrees with the orbit oracle up to q = 10", "[classify]") {
  for (long long q = 2; q <= 10; ++q) {
    for (long long a = 0; a < q; ++a) {
      for (long long b = 0; b < q; ++b) {
        if (std::gcd(std::gcd(a, b), q) != 1) continue;
        OrbitRecord rec = gamma_theta_orbit(make_torus_pair(rat(a, q), rat(b, q)));
        bool avoids = rec.U.empty() && rec.Vplus.empty() && rec.Vminus.empty();
        bool labeled_good = classify_pair(rat(a, q), rat(b, q)).good;
        REQUIRE(labeled_good == avoids);
        REQUIRE((rec.m1 > 0) == avoids);
      }
    }
  }
}

TEST_CASE("first minimum is symmetric under sign flips", "[classify]") {
  auto all_equal = [](const std::array<Rational, 4>& v) {
    return v[0] == v[1] && v[1] == v[2] && v[2] == v[3];
  };
  REQUIRE(all_equal(symmetry_m1(rat(1, 6), rat(1, 6))));
  REQUIRE(symmetry_m1(rat(1, 6), rat(1, 6))[0] == rat(1, 6));
  REQUIRE(all_equal(symmetry_m1(rat(0), rat(0))));
  REQUIRE(symmetry_m1(rat(0), rat(0))[0] == rat(0));
  REQUIRE(all_equal(symmetry_m1(rat(1, 2), rat(1, 6))));

  std::mt19937_64 rng(202);
  std::uniform_int_distribution<long long> uq(2, 30);
  for (int trial = 0; trial < 40; ++trial) {
    long long q = uq(rng);
    std::uniform_int_distribution<long long> un(0, q - 1);
    long long a = un(rng), b = un(rng);
    REQUIRE(all_equal(symmetry_m1(rat(a, q), rat(b, q))));
  }
}

TEST_CASE("second Jordan totient", "[totient]") {
  REQUIRE(jordan_totient_J2(1) == 1);
  REQUIRE(jordan_totient_J2(3) == 8);
  REQUIRE(jordan_totient_J2(5) == 24);
  REQUIRE(jordan_totient_J2(6) == 24);
  REQUIRE(jordan_totient_J2(7) == 48);
  REQUIRE(jordan_totient_J2(15) == jordan_totient_J2(3) * jordan_totient_J2(5));
  REQUIRE_THROWS_AS(jordan_totient_J2(0), std::invalid_argument);
}

TEST_CASE("good-pair enumeration matches the totient count", "[totient]") {
  auto m1_list = enumerate_good_pairs(1);
  REQUIRE(m1_list.size() == 1);
  REQUIRE(m1_list[0] == make_torus_pair(rat(1, 2), rat(1, 2)));

  for (long long m : {1, 3, 5, 7, 9, 15}) {
    auto pairs = enumerate_good_pairs(m);
    REQUIRE(pairs.size() == static_cast<std::size_t>(jordan_totient_J2(m)));
    double j2 = static_cast<double>(jordan_totient_J2(m));
    double md = static_cast<double>(m);
    REQUIRE(j2 >= 8.0 * md * md / (pi_v * pi_v) - 1e-9);
    REQUIRE(j2 <= md * md + 1e-9);
  }
  for (const auto& p : enumerate_good_pairs(3)) {
    REQUIRE(classify_pair(p.alpha, p.beta).good);
  }
  REQUIRE_THROWS_AS(enumerate_good_pairs(4), std::invalid_argument);
}
