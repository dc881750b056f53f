// SL(2,R) x R^{2k} group arithmetic, Iwasawa coordinates, the two-cusp
// fundamental domain reduction, and the nearest-lattice-point distance.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include <theta_bounds/theta_bounds.hpp>

using namespace theta_bounds;

namespace {

double angle_dist(double a, double b) {
  double d = std::fabs(mod_2pi(a) - mod_2pi(b));
  return std::min(d, two_pi - d);
}

Sl2Mat random_unimodular(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(-3.0, 3.0);
  std::uniform_real_distribution<double> uly(-2.0, 2.0);
  std::uniform_real_distribution<double> uphi(0.0, two_pi);
  double x = ux(rng);
  double y = std::exp(uly(rng));
  double phi = uphi(rng);
  return iwasawa_compose(x, y, phi);
}

GElem random_elem(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> uv(-2.0, 2.0);
  GElem g;
  g.mat = random_unimodular(rng);
  g.v1.resize(k);
  g.v2.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    double a = uv(rng);
    double b = uv(rng);
    g.v1[i] = a;
    g.v2[i] = b;
  }
  return g;
}

IwasawaPoint random_point(std::mt19937_64& rng, std::size_t k, double ylo = 1e-2,
                          double yhi = 10.0) {
  std::uniform_real_distribution<double> ux(-5.0, 5.0);
  std::uniform_real_distribution<double> uly(std::log(ylo), std::log(yhi));
  std::uniform_real_distribution<double> uphi(0.0, two_pi);
  std::uniform_real_distribution<double> uxi(-2.0, 2.0);
  IwasawaPoint p;
  p.x = ux(rng);
  p.y = std::exp(uly(rng));
  p.phi = uphi(rng);
  p.xi1.resize(k);
  p.xi2.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    double a = uxi(rng);
    double b = uxi(rng);
    p.xi1[i] = a;
    p.xi2[i] = b;
  }
  return p;
}

}  // namespace

TEST_CASE("composition preserves the determinant", "[group]") {
  std::mt19937_64 rng(101);
  double worst = 0;
  for (int i = 0; i < 1'000'000; ++i) {
    Sl2Mat g = random_unimodular(rng);
    Sl2Mat h = random_unimodular(rng);
    worst = std::max(worst, std::fabs(mul(g, h).det() - 1.0));
  }
  REQUIRE(worst <= 1e-10);
}

TEST_CASE("renormalize keeps long chains unimodular", "[group]") {
  std::mt19937_64 rng(102);
  Sl2Mat acc = sl2_identity();
  double worst = 0;
  for (int i = 0; i < 20'000; ++i) {
    // alternate a factor and its inverse so entries stay bounded while the
    // chain keeps accumulating rounding noise
    Sl2Mat g = random_unimodular(rng);
    acc = mul(acc, g);
    acc = mul(acc, inverse(g));
    acc.renormalize();
    worst = std::max(worst, std::fabs(acc.det() - 1.0));
  }
  REQUIRE(worst <= 1e-10);
}

TEST_CASE("group action is compatible with composition", "[group]") {
  std::mt19937_64 rng(103);
  for (int i = 0; i < 1000; ++i) {
    GElem g = random_elem(rng, 1);
    GElem h = random_elem(rng, 1);
    IwasawaPoint p = random_point(rng, 1);
    IwasawaPoint lhs = act(compose(g, h), p);
    IwasawaPoint rhs = act(g, act(h, p));
    REQUIRE_THAT(lhs.x, Catch::Matchers::WithinAbs(rhs.x, 1e-9));
    REQUIRE_THAT(lhs.y, Catch::Matchers::WithinAbs(rhs.y, 1e-9));
    REQUIRE(angle_dist(lhs.phi, rhs.phi) < 1e-9);
    REQUIRE_THAT(lhs.xi1[0], Catch::Matchers::WithinAbs(rhs.xi1[0], 1e-9));
    REQUIRE_THAT(lhs.xi2[0], Catch::Matchers::WithinAbs(rhs.xi2[0], 1e-9));
  }
}

TEST_CASE("imaginary part transforms as y / |cz + d|^2", "[group]") {
  std::mt19937_64 rng(104);
  for (int i = 0; i < 200; ++i) {
    GElem g = random_elem(rng, 1);
    IwasawaPoint p = random_point(rng, 1);
    std::complex<double> czd = g.mat.c * p.z() + g.mat.d;
    double expected = p.y / std::norm(czd);
    REQUIRE_THAT(act(g, p).y, Catch::Matchers::WithinRel(expected, 1e-12));
  }
}

TEST_CASE("iwasawa decomposition round trips", "[group]") {
  std::mt19937_64 rng(105);
  for (int i = 0; i < 200; ++i) {
    Sl2Mat m = random_unimodular(rng);
    IwasawaTriple t = iwasawa_decompose(m);
    Sl2Mat back = iwasawa_compose(t.x, t.y, t.phi);
    REQUIRE_THAT(back.a, Catch::Matchers::WithinAbs(m.a, 1e-10));
    REQUIRE_THAT(back.b, Catch::Matchers::WithinAbs(m.b, 1e-10));
    REQUIRE_THAT(back.c, Catch::Matchers::WithinAbs(m.c, 1e-10));
    REQUIRE_THAT(back.d, Catch::Matchers::WithinAbs(m.d, 1e-10));
  }
  REQUIRE_THROWS_AS(iwasawa_decompose(Sl2Mat{2, 0, 0, 1}), std::invalid_argument);
}

TEST_CASE("left action on the base point matches decomposition", "[group]") {
  std::mt19937_64 rng(106);
  for (int i = 0; i < 200; ++i) {
    GElem g = random_elem(rng, 1);
    IwasawaPoint via_act = act(g, base_point(1));
    IwasawaPoint via_decompose = point_of(g);
    REQUIRE_THAT(via_act.x, Catch::Matchers::WithinAbs(via_decompose.x, 1e-10));
    REQUIRE_THAT(via_act.y, Catch::Matchers::WithinAbs(via_decompose.y, 1e-10));
    REQUIRE(angle_dist(via_act.phi, via_decompose.phi) < 1e-10);
    REQUIRE_THAT(via_act.xi1[0], Catch::Matchers::WithinAbs(via_decompose.xi1[0], 1e-12));
    REQUIRE_THAT(via_act.xi2[0], Catch::Matchers::WithinAbs(via_decompose.xi2[0], 1e-12));
  }
}

TEST_CASE("horocycle lift equals right translation by the flows", "[group]") {
  const double N = 37.0, x = 0.81;
  const std::vector<double> alpha = {0.5}, beta = {1.0 / 6};
  IwasawaPoint direct = horocycle_lift(N, x, alpha, beta);
  REQUIRE(direct.x == x);
  REQUIRE(direct.y == 1.0 / (N * N));
  REQUIRE(direct.phi == 0.0);
  REQUIRE(direct.xi1[0] == alpha[0] + beta[0] * x);
  REQUIRE(direct.xi2[0] == 0.0);

  GElem base = torus_translation({alpha[0] + beta[0] * x}, {0.0});
  GElem flow = compose(horocycle(x), geodesic(2.0 * std::log(N)));
  IwasawaPoint via_group = point_of(compose(base, flow));
  REQUIRE_THAT(via_group.x, Catch::Matchers::WithinAbs(direct.x, 1e-12));
  REQUIRE_THAT(via_group.y, Catch::Matchers::WithinRel(direct.y, 1e-12));
  REQUIRE(angle_dist(via_group.phi, direct.phi) < 1e-12);
  REQUIRE_THAT(via_group.xi1[0], Catch::Matchers::WithinAbs(direct.xi1[0], 1e-12));
  REQUIRE(via_group.xi2[0] == 0.0);

  REQUIRE_THROWS_AS(horocycle_lift(0.0, x, alpha, beta), std::invalid_argument);
}

TEST_CASE("fundamental domain membership and cusp tags", "[domain]") {
  // interior point near the cusp at infinity
  IwasawaPoint hi{0.7, 0.8, 0.0, {0.3}, {0.4}};
  auto tag_hi = in_fundamental_domain(hi);
  REQUIRE(tag_hi.has_value());
  REQUIRE(*tag_hi == DomainTag::CuspInfinity);

  // interior point near the cusp at 1 (low y, outside both disks)
  IwasawaPoint lo{1.0, 0.01, 0.0, {0.3}, {0.4}};
  auto tag_lo = in_fundamental_domain(lo);
  REQUIRE(tag_lo.has_value());
  REQUIRE(*tag_lo == DomainTag::CuspOne);

  // |z| = 1 fails the strict test but passes within a boundary tolerance
  IwasawaPoint edge{0.0, 1.0, 0.0, {0.0}, {0.0}};
  REQUIRE(!in_fundamental_domain(edge).has_value());
  REQUIRE(in_fundamental_domain(edge, 1e-9).has_value());

  // phi and xi windows
  IwasawaPoint bad_phi{0.7, 0.8, 3.5, {0.3}, {0.4}};
  REQUIRE(!in_fundamental_domain(bad_phi).has_value());
  IwasawaPoint bad_xi{0.7, 0.8, 0.0, {1.3}, {0.4}};
  REQUIRE(!in_fundamental_domain(bad_xi).has_value());
}

TEST_CASE("reduction terminates, lands in the domain, and is idempotent", "[domain]") {
  // Both cusps are batched (one letter per continued-fraction digit), so
  // words stay logarithmic in 1/y even for points drawn hard against the
  // real axis: measured max is 14 letters at y >= 1e-8.
  std::mt19937_64 rng(107);
  int max_word = 0;
  for (int i = 0; i < 10'000; ++i) {
    IwasawaPoint p = random_point(rng, 1, 1e-8, 10.0);
    ReductionResult r = reduce_to_fundamental_domain(p);
    max_word = std::max(max_word, static_cast<int>(r.word.size()));
    REQUIRE(in_fundamental_domain(r.reduced, 1e-9).has_value());

    ReductionResult again = reduce_to_fundamental_domain(r.reduced);
    REQUIRE(again.word.empty());
    REQUIRE(again.reduced.x == r.reduced.x);
    REQUIRE(again.reduced.y == r.reduced.y);
    REQUIRE(again.reduced.phi == r.reduced.phi);
    REQUIRE(again.reduced.xi1[0] == r.reduced.xi1[0]);
    REQUIRE(again.reduced.xi2[0] == r.reduced.xi2[0]);
  }
  REQUIRE(max_word <= 64);

  // a point shadowing the cusp at 1 reduces in a handful of batched letters
  IwasawaPoint creep{1.0 + 1e-7, 1e-8, 0.3, {0.6}, {0.7}};
  ReductionResult r = reduce_to_fundamental_domain(creep);
  REQUIRE(r.word.size() <= 8);
  REQUIRE(in_fundamental_domain(r.reduced, 1e-9).has_value());
}

TEST_CASE("reduction word reproduces the reduced point via the action", "[domain]") {
  std::mt19937_64 rng(108);
  for (int i = 0; i < 200; ++i) {
    IwasawaPoint p = random_point(rng, 1, 1e-4, 10.0);
    ReductionResult r = reduce_to_fundamental_domain(p);
    IwasawaPoint replay = act(r.gamma, p);
    REQUIRE_THAT(replay.x, Catch::Matchers::WithinAbs(r.reduced.x, 1e-8));
    REQUIRE_THAT(replay.y, Catch::Matchers::WithinRel(r.reduced.y, 1e-8));
  }
}

TEST_CASE("reduction respects the generator cap", "[domain]") {
  IwasawaPoint deep{0.3141, 1e-7, 0.2, {0.6}, {0.7}};
  REQUIRE_THROWS_AS(reduce_to_fundamental_domain(deep, 1), ReductionError);
  try {
    reduce_to_fundamental_domain(deep, 1);
  } catch (const ReductionError& e) {
    REQUIRE(!e.partial_word.empty());
  }
  REQUIRE_THROWS_AS(reduce_to_fundamental_domain(IwasawaPoint{0, -1, 0, {0}, {0}}),
                    std::invalid_argument);
}

TEST_CASE("boundary landings are flagged", "[domain]") {
  IwasawaPoint edge{0.0, 1.0, 0.0, {0.25}, {0.75}};
  ReductionResult r = reduce_to_fundamental_domain(edge);
  REQUIRE(r.on_boundary);
}

TEST_CASE("distance to the nearest integer point", "[lattice]") {
  REQUIRE(theta_dist({0.0, 0.0, 0.0}) == 0.0);
  REQUIRE(theta_dist({1.0 / 6}) == 1.0 / 6);
  REQUIRE_THAT(theta_dist({0.5, 0.9}),
               Catch::Matchers::WithinAbs(std::sqrt(0.26), 1e-15));

  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> uv(-4.0, 4.0);
  std::uniform_int_distribution<int> ui(-3, 3);
  for (int i = 0; i < 500; ++i) {
    double v0 = uv(rng);
    double v1 = uv(rng);
    int m0 = ui(rng);
    int m1 = ui(rng);
    double base = theta_dist({v0, v1});
    REQUIRE_THAT(theta_dist({v0 + m0, v1 + m1}), Catch::Matchers::WithinAbs(base, 1e-12));
    REQUIRE_THAT(theta_dist({-v0, -v1}), Catch::Matchers::WithinAbs(base, 1e-12));
    REQUIRE(base <= std::sqrt(2.0) / 2 + 1e-12);
  }
}
