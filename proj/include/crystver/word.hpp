#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crystver/errors.hpp"

namespace crystver::word {

// Grammar shared by presentations, cocycle data and the CLI:
//   word := term+
//   term := atom ['^' signed-integer]
//   atom := generator-name | '(' word ')' | '[' word ',' word ']'
// with [x,y] = x^-1 y^-1 x y. Whitespace and '*' both act as separators.
// Generator names are matched longest-first against the declared set, so
// with generators {a, b} the text "ab" reads as a*b.

struct Word;

struct Factor {
  enum class Kind { generator, grouped, commutator };
  Kind kind = Kind::generator;
  std::string generator;       // set for Kind::generator
  std::vector<Word> parts;      // 1 entry for grouped, 2 for commutator
  std::int64_t exponent = 1;
};

struct Word {
  std::vector<Factor> factors;
  bool empty() const { return factors.empty(); }
};

/// Parses `text` against the declared generator names.
/// Throws ParseError (syntax) or InputError (unknown generator).
Word parse(std::string_view text, std::span<const std::string> generators);

/// Evaluates a word in any group given its operations.
/// `gen` maps a generator name to an element; `mul`/`inv` are the group law.
template <typename Elem, typename GenFn, typename MulFn, typename InvFn>
Elem evaluate(const Word& w, const Elem& identity, GenFn&& gen, MulFn&& mul, InvFn&& inv) {
  Elem acc = identity;
  for (const Factor& f : w.factors) {
    Elem val = identity;
    switch (f.kind) {
      case Factor::Kind::generator:
        val = gen(f.generator);
        break;
      case Factor::Kind::grouped:
        val = evaluate(f.parts[0], identity, gen, mul, inv);
        break;
      case Factor::Kind::commutator: {
        Elem x = evaluate(f.parts[0], identity, gen, mul, inv);
        Elem y = evaluate(f.parts[1], identity, gen, mul, inv);
        val = mul(mul(inv(x), inv(y)), mul(x, y));
        break;
      }
    }
    std::int64_t e = f.exponent;
    if (e < 0) {
      val = inv(val);
      e = -e;
    }
    for (std::int64_t k = 0; k < e; ++k) acc = mul(acc, val);
  }
  return acc;
}

}  // namespace crystver::word
