#pragma once

// Reduction to the fundamental domain of Gamma = <S, T^2> ⋉ Z^{2k}, acting on
// H x [0,2pi) x R^{2k}:
//
//   F = { |z| > 1, |z-2| > 1, 0 <= Re z < 2 } x [0,pi) x [0,1)^{2k}.
//
// The domain has two cusps: i-infinity (width 2) and the point 1 (where the
// two bounding circles meet).  Every point of F with y < 1/2 lies in the
// pinched region |z-1|^2 <= 2y at the cusp at 1, and conversely y >= 1/2 is
// the i-infinity neighborhood, so the tag splits on y >= 1/2.  (Splitting on
// |z| instead would leave one tag unreachable: F contains no z with |z| < 1.)

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "theta_bounds/sl2.hpp"

namespace theta_bounds {

enum class DomainTag { CuspInfinity, CuspOne };

// Membership test.  Strict inequalities by default (exact boundary points are
// rejected); boundary_tol > 0 admits points within that margin of the
// boundary into the closure — the reducer uses this to accept its own
// floating-point output.
inline std::optional<DomainTag> in_fundamental_domain(const IwasawaPoint& p,
                                                      double boundary_tol = 0.0) {
  const double t = boundary_tol;
  double az2 = p.x * p.x + p.y * p.y;
  double bz2 = (p.x - 2) * (p.x - 2) + p.y * p.y;
  if (!(az2 > 1.0 - t) || !(bz2 > 1.0 - t)) return std::nullopt;
  if (p.x < -t || p.x >= 2.0 + t) return std::nullopt;
  double phi = p.phi >= two_pi - t ? 0.0 : p.phi;  // wrap-around within tol
  if (phi >= std::numbers::pi + t) return std::nullopt;
  for (std::size_t i = 0; i < p.k(); ++i) {
    if (p.xi1[i] < -t || p.xi1[i] >= 1.0 + t) return std::nullopt;
    if (p.xi2[i] < -t || p.xi2[i] >= 1.0 + t) return std::nullopt;
  }
  return p.y >= 0.5 ? DomainTag::CuspInfinity : DomainTag::CuspOne;
}

class ReductionError : public std::runtime_error {
 public:
  std::vector<std::string> partial_word;

  ReductionError(const std::string& msg, std::vector<std::string> word)
      : std::runtime_error(msg), partial_word(std::move(word)) {}
};

struct ReductionResult {
  GElem gamma;             // composed word; act(gamma, input) = reduced
  IwasawaPoint reduced;
  DomainTag tag;
  std::vector<std::string> word;  // letters in order of application
  bool on_boundary = false;       // reduced point within 1e-12 of the boundary
};

// Two-disk hyperbolic reduction with both cusps batched:
//   repeat { translate Re z into [0,2) by a T^{2j} batch (one letter);
//            if z is inside either bounding disk, apply one power P^n of the
//            parabolic P = (T^2 S)^{-1} = [[0,1],[-1,2]] fixing 1 }
// In the coordinate u = 1/(z-1), P acts as u -> u-1 and the complement of the
// two disks is exactly the strip |Re u| <= 1/2, so a single batched power
// lands there.  Each batch strictly increases y, so the loop terminates; and
// because both cusps are batched the word length stays O(log(1/y)) even for
// points shadowing a cusp (one letter per continued-fraction digit of x,
// where single-generator stepping would creep parabolically with word length
// ~ 1/|z-1|).  Afterwards reduce phi mod pi with -I (which negates xi) and
// translate xi into [0,1)^{2k}; each batch counts as one letter.
inline ReductionResult reduce_to_fundamental_domain(const IwasawaPoint& p,
                                                    int max_letters = 200) {
  if (!(p.y > 0)) throw std::invalid_argument("reduce: y must be positive");
  const std::size_t k = p.k();
  const double disk_eps = 1e-13;  // strictly inside the loop threshold, so the
                                  // final 1e-12 closure test always passes

  IwasawaPoint cur = p;
  GElem gamma = identity_elem(k);
  std::vector<std::string> word;

  auto apply = [&](const GElem& g, std::string letter) {
    if (static_cast<int>(word.size()) >= max_letters)
      throw ReductionError("reduce: generator cap exceeded", word);
    cur = act(g, cur);
    gamma = compose(g, gamma);
    word.push_back(std::move(letter));
  };

  for (;;) {
    double j = std::floor(cur.x / 2.0);
    if (j != 0) {
      GElem t{sl2_T(-2.0 * j), std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
      apply(t, "T^" + std::to_string(static_cast<long long>(-2.0 * j)));
    }
    double az2 = cur.x * cur.x + cur.y * cur.y;
    double bz2 = (cur.x - 2) * (cur.x - 2) + cur.y * cur.y;
    if (az2 >= 1.0 - disk_eps && bz2 >= 1.0 - disk_eps) break;
    // Inside a disk, so |Re u| > 1/2; P^n with n = ceil(Re u - 1/2) != 0
    // brings Re u into (-1/2, 1/2].
    double d2 = (cur.x - 1) * (cur.x - 1) + cur.y * cur.y;
    double n = std::ceil((cur.x - 1) / d2 - 0.5);
    if (n == 0) break;  // hairline boundary case: let the membership check rule
    if (!(std::fabs(n) < 9e15))
      throw ReductionError("reduce: parabolic batch out of range", word);
    GElem pn{Sl2Mat{1.0 - n, n, -n, 1.0 + n},
             std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
    apply(pn, "P^" + std::to_string(static_cast<long long>(n)));
  }

  if (cur.phi >= std::numbers::pi && cur.phi < two_pi - 1e-13)
    apply(neg_identity(k), "-I");

  std::vector<double> m(k, 0.0), n(k, 0.0);
  bool translate = false;
  for (std::size_t i = 0; i < k; ++i) {
    m[i] = -std::floor(cur.xi1[i]);
    n[i] = -std::floor(cur.xi2[i]);
    translate |= (m[i] != 0 || n[i] != 0);
  }
  if (translate) {
    std::string letter = "t(";
    for (std::size_t i = 0; i < k; ++i)
      letter += std::to_string(static_cast<long long>(m[i])) + (i + 1 < k ? "," : ";");
    for (std::size_t i = 0; i < k; ++i)
      letter += std::to_string(static_cast<long long>(n[i])) + (i + 1 < k ? "," : ")");
    apply(torus_translation(m, n), letter);
  }

  auto tag = in_fundamental_domain(cur, 1e-12);
  if (!tag) throw ReductionError("reduce: output failed the membership check", word);

  ReductionResult out{gamma, cur, *tag, std::move(word), false};
  out.on_boundary = !in_fundamental_domain(cur, 0.0).has_value();
  return out;
}

}  // namespace theta_bounds
