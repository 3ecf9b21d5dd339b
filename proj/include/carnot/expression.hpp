#pragma once

#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "carnot/errors.hpp"
#include "carnot/rational.hpp"

namespace carnot {

// Recursive-descent reader for the plain-text grammar shared by polynomials
// and enveloping-algebra elements:
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := power ('*' power)*
//   power  := atom ['^' integer]
//   atom   := number ['/' number] | name | '(' expr ')'
//
// Products are formed left to right, so for noncommutative rings the written
// order is the multiplication order.
template <class Ring>
class ExpressionReader {
 public:
  using Lookup = std::function<std::optional<Ring>(std::string_view)>;
  using Constant = std::function<Ring(const Rational&)>;

  ExpressionReader(Lookup lookup, Constant constant)
      : lookup_(std::move(lookup)), constant_(std::move(constant)) {}

  Ring read(std::string_view text) {
    text_ = text;
    pos_ = 0;
    Ring r = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " in '" + std::string(text_) + "'", "offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Ring expr() {
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    Ring r = term();
    if (negate) r = constant_(-1) * r;
    for (;;) {
      if (accept('+')) r = r + term();
      else if (accept('-')) r = r - term();
      else return r;
    }
  }

  Ring term() {
    Ring r = power();
    while (accept('*')) r = r * power();
    return r;
  }

  Ring power() {
    Ring base = atom();
    if (!accept('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an exponent");
    const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
    if (e > 64) fail("exponent too large");
    Ring r = constant_(1);
    for (unsigned long i = 0; i < e; ++i) r = r * base;
    return r;
  }

  Ring atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Ring r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      std::string literal(text_.substr(start, pos_ - start));
      skip();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip();
        const std::size_t dstart = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (dstart == pos_) fail("expected a denominator");
        literal += "/" + std::string(text_.substr(dstart, pos_ - dstart));
      }
      try {
        return constant_(parse_rational(literal));
      } catch (const ParseError&) {
        fail("bad number '" + literal + "'");
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const auto name = text_.substr(start, pos_ - start);
      auto v = lookup_(name);
      if (!v) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      return *v;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Lookup lookup_;
  Constant constant_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace carnot
