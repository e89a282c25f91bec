#include "crystver/word.hpp"

#include <algorithm>
#include <cctype>

namespace crystver::word {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> generators)
      : text_(text), names_(generators.begin(), generators.end()) {
    // longest first, so a name that prefixes another cannot shadow it
    std::sort(names_.begin(), names_.end(),
              [](const std::string& a, const std::string& b) {
                return a.size() != b.size() ? a.size() > b.size() : a < b;
              });
  }

  Word parse_all() {
    Word w = parse_sequence("");
    if (pos_ != std::string_view::npos && peek() != 0) {
      throw ParseError(err("unexpected '" + std::string(1, peek()) + "'"));
    }
    return w;
  }

 private:
  std::string err(const std::string& what) const {
    return "word '" + std::string(text_) + "', position " + std::to_string(pos_) + ": " + what;
  }

  // skips separators; returns 0 at end of input
  char peek() {
    while (pos_ < text_.size() &&
           (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*')) {
      ++pos_;
    }
    return pos_ < text_.size() ? text_[pos_] : 0;
  }

  std::int64_t parse_exponent() {
    char c = peek();
    std::size_t start = pos_;
    if (c == '+' || c == '-') ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) throw ParseError(err("expected integer exponent after '^'"));
    try {
      return std::stoll(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      throw ParseError(err("exponent out of range"));
    }
  }

  Word parse_sequence(std::string_view closers) {
    Word out;
    for (;;) {
      char c = peek();
      if (c == 0 || closers.find(c) != std::string_view::npos) return out;
      Factor f;
      if (c == '(') {
        ++pos_;
        f.kind = Factor::Kind::grouped;
        f.parts.push_back(parse_sequence(")"));
        expect(')');
      } else if (c == '[') {
        ++pos_;
        f.kind = Factor::Kind::commutator;
        f.parts.push_back(parse_sequence(","));
        expect(',');
        f.parts.push_back(parse_sequence("]"));
        expect(']');
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        f.kind = Factor::Kind::generator;
        f.generator = match_generator();
      } else {
        throw ParseError(err("unexpected '" + std::string(1, c) + "'"));
      }
      if (peek() == '^') {
        ++pos_;
        f.exponent = parse_exponent();
      }
      out.factors.push_back(std::move(f));
    }
  }

  void expect(char c) {
    if (peek() != c) throw ParseError(err(std::string("expected '") + c + "'"));
    ++pos_;
  }

  std::string match_generator() {
    for (const std::string& n : names_) {
      if (text_.substr(pos_, n.size()) == n) {
        pos_ += n.size();
        return n;
      }
    }
    // isolate the identifier for the message
    std::size_t end = pos_;
    while (end < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
      ++end;
    }
    throw InputError(err("unknown generator '" + std::string(text_.substr(pos_, end - pos_)) + "'"));
  }

  std::string_view text_;
  std::vector<std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse(std::string_view text, std::span<const std::string> generators) {
  return Parser(text, generators).parse_all();
}

}  // namespace crystver::word
