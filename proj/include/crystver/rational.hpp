#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "crystver/errors.hpp"

namespace crystver::exact {

/// Arbitrary-precision integer. All lattice data lives here; there is no
/// fixed-width fast path (normal-form pivots can grow without bound).
using Int = boost::multiprecision::cpp_int;

/// Exact rational in canonical form: positive denominator, coprime to the
/// numerator. The backend maintains the invariant on every operation.
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return den(q) == 1; }

/// Floor division on integers (rounds toward negative infinity).
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Integer floor of a rational.
inline Int rat_floor(const Rational& q) { return floor_div(num(q), den(q)); }

/// Canonical representative of q modulo 1, in [0, 1).
inline Rational mod_one(const Rational& q) { return q - Rational(rat_floor(q)); }

/// Parses "p/q" or "p" with optional sign; denominator must be nonzero.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Int& n);

}  // namespace crystver::exact
