#pragma once

// Exact rational arithmetic on the torus Q/Z: mod-1 reduction, distance to
// the nearest integer, and "a/q" parsing for CLI flags.  Arbitrary-precision
// backing keeps orbit closures exact for any seed denominator.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace theta_bounds {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rational_floor(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

// representative in [0, 1)
inline Rational mod1(const Rational& r) { return r - Rational(rational_floor(r)); }

// theta_1 on exact data: distance from r to the nearest integer, in [0, 1/2]
inline Rational dist_to_nearest_int(const Rational& r) {
  Rational f = mod1(r);
  return f <= Rational(1, 2) ? f : Rational(1) - f;
}

// squared Euclidean distance from v to the nearest point of Z^k
inline Rational dist_to_lattice_squared(const std::vector<Rational>& v) {
  Rational acc = 0;
  for (const auto& c : v) {
    Rational d = dist_to_nearest_int(c);
    acc += d * d;
  }
  return acc;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

// Accepts "a/q" (q > 0) or a bare integer, with optional leading sign.
inline Rational parse_rational(const std::string& s) {
  auto fail = [&] { throw std::invalid_argument("expected rational 'a/q', got '" + s + "'"); };
  if (s.empty()) fail();
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  std::size_t slash = std::string::npos;
  if (i == s.size()) fail();
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] == '/') {
      if (slash != std::string::npos || j == i || j + 1 == s.size()) fail();
      slash = j;
    } else if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
      fail();
    }
  }
  BigInt num(s.substr(i, (slash == std::string::npos ? s.size() : slash) - i));
  if (s[0] == '-') num = -num;
  BigInt den = slash == std::string::npos ? BigInt(1) : BigInt(s.substr(slash + 1));
  if (den == 0) fail();
  return Rational(num, den);
}

}  // namespace theta_bounds
