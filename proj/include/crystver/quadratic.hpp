#pragma once

#include "crystver/rational.hpp"

namespace crystver::chartab {

/// The quadratic ring Q(w) with w a root of the monic polynomial
/// x^2 + u x + c (u, c integers). With all b-parts zero a table behaves as
/// a rational table.
struct QuadraticRing {
  exact::Int u = 0;
  exact::Int c = 0;

  exact::Int discriminant() const { return u * u - 4 * c; }
  /// w is a non-real complex number; complex conjugation is then the
  /// nontrivial Galois automorphism.
  bool is_complex() const { return discriminant() < 0; }

  bool operator==(const QuadraticRing&) const = default;
};

/// a + b*w in Q(w).
struct QuadraticValue {
  exact::Rational a;
  exact::Rational b;

  bool operator==(const QuadraticValue&) const = default;
  bool is_rational() const { return b == 0; }
};

inline QuadraticValue qadd(const QuadraticValue& x, const QuadraticValue& y) {
  return {x.a + y.a, x.b + y.b};
}

inline QuadraticValue qsub(const QuadraticValue& x, const QuadraticValue& y) {
  return {x.a - y.a, x.b - y.b};
}

/// Uses w^2 = -u w - c.
inline QuadraticValue qmul(const QuadraticRing& ring, const QuadraticValue& x,
                           const QuadraticValue& y) {
  exact::Rational bb = x.b * y.b;
  return {x.a * y.a - exact::Rational(ring.c) * bb,
          x.a * y.b + x.b * y.a - exact::Rational(ring.u) * bb};
}

/// w -> -u - w (the other root).
inline QuadraticValue galois_conj(const QuadraticRing& ring, const QuadraticValue& x) {
  return {x.a - exact::Rational(ring.u) * x.b, -x.b};
}

/// Complex conjugation: the Galois map when w is complex, identity when real.
inline QuadraticValue complex_conj(const QuadraticRing& ring, const QuadraticValue& x) {
  return ring.is_complex() ? galois_conj(ring, x) : x;
}

/// Trace x + x-bar = 2a - u b; rational.
inline exact::Rational qtrace(const QuadraticRing& ring, const QuadraticValue& x) {
  return 2 * x.a - exact::Rational(ring.u) * x.b;
}

/// Norm x * x-bar = a^2 - u a b + c b^2; rational.
inline exact::Rational qnorm(const QuadraticRing& ring, const QuadraticValue& x) {
  return x.a * x.a - exact::Rational(ring.u) * x.a * x.b + exact::Rational(ring.c) * x.b * x.b;
}

/// Algebraic integer test: rational values must be integers, others must
/// have integral trace and norm.
inline bool is_algebraic_integer(const QuadraticRing& ring, const QuadraticValue& x) {
  if (x.is_rational()) return exact::is_integral(x.a);
  return exact::is_integral(qtrace(ring, x)) && exact::is_integral(qnorm(ring, x));
}

std::string to_string(const QuadraticValue& x);

}  // namespace crystver::chartab
