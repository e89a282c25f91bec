#include "crystver/rational.hpp"

#include <cctype>

namespace crystver::exact {

namespace {

Int parse_int(std::string_view text) {
  if (text.empty()) throw ParseError("empty integer literal");
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw ParseError("sign without digits in integer literal");
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw ParseError("bad integer literal '" + std::string(text) + "'");
    }
  }
  Int value(std::string(text.substr(i)));
  return negative ? -value : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Int p = parse_int(text.substr(0, slash));
  Int q = parse_int(text.substr(slash + 1));
  if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(p, q);
}

std::string to_string(const Rational& q) {
  if (is_integral(q)) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

std::string to_string(const Int& n) { return n.str(); }

}  // namespace crystver::exact
