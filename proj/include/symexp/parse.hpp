#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "multipoly.hpp"

namespace symexp {

namespace detail {

// Recursive-descent reader for the polynomial text grammar:
//   expr  := term (('+'|'-') term)*
//   term  := unary ('*' unary)*
//   unary := ('+'|'-') unary | power
//   power := atom ('^' integer)?
//   atom  := integer | integer '/' integer | variable | '(' expr ')'
// Variables are x1..xN, or x, y, z for x1, x2, x3. When `univariate` is set,
// `t` and `x` both denote the single variable.
class PolyReader {
 public:
  PolyReader(std::string_view text, std::size_t arity, bool univariate)
      : s_(text), arity_(arity), uni_(univariate) {}

  MultiPoly run() {
    MultiPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

  // Highest variable index mentioned, plus one.
  static std::size_t scan_arity(std::string_view s) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      char c = s[i];
      bool boundary = i == 0 || !std::isalnum(static_cast<unsigned char>(s[i - 1]));
      if (!boundary) continue;
      if (c == 'x') {
        std::size_t j = i + 1, v = 0;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) v = v * 10 + static_cast<std::size_t>(s[j++] - '0');
        best = std::max(best, j > i + 1 ? v : std::size_t{1});
      } else if (c == 'y') {
        best = std::max<std::size_t>(best, 2);
      } else if (c == 'z') {
        best = std::max<std::size_t>(best, 3);
      }
    }
    return best;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw PreconditionError("parse error at offset " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }
  MultiPoly term() {
    MultiPoly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }
  MultiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  MultiPoly power() {
    MultiPoly base = atom();
    if (accept('^')) {
      std::string e = digits();
      if (e.size() > 4 || std::stoul(e) > 1000) fail("exponent too large");
      return base.pow(static_cast<unsigned>(std::stoul(e)));
    }
    return base;
  }
  MultiPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num(digits());
      std::size_t save = pos_;
      if (accept('/')) {
        skip();
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          Integer den(digits());
          if (den == 0) fail("zero denominator");
          return MultiPoly::constant(arity_, Rational(num, den));
        }
        pos_ = save;
        fail("'/' is only allowed inside a rational literal");
      }
      return MultiPoly::constant(arity_, Rational(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      return MultiPoly::variable(arity_, var_index(name));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::size_t var_index(const std::string& name) {
    if (uni_ && (name == "t" || name == "x" || name == "x1")) return 0;
    if (name == "x") return 0;
    if (name == "y") return check(1, name);
    if (name == "z") return check(2, name);
    if (name.size() > 1 && name[0] == 'x' && name.find_first_not_of("0123456789", 1) == std::string::npos &&
        name[1] != '0') {
      if (name.size() > 4) fail("variable index too large");
      return check(std::stoul(name.substr(1)) - 1, name);
    }
    fail("unknown variable '" + name + "'");
  }
  std::size_t check(std::size_t i, const std::string& name) {
    if (i >= arity_) fail("variable '" + name + "' exceeds arity " + std::to_string(arity_));
    return i;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t arity_;
  bool uni_;
};

}  // namespace detail

// Parses a multivariate polynomial. Arity is the highest variable mentioned,
// raised to `min_arity` when given.
inline MultiPoly parse_poly(std::string_view text, std::size_t min_arity = 1) {
  std::size_t arity = std::max<std::size_t>({detail::PolyReader::scan_arity(text), min_arity, 1});
  return detail::PolyReader(text, arity, false).run();
}

inline MultiPoly parse_poly_arity(std::string_view text, std::size_t arity) {
  require(arity >= 1, "arity must be positive");
  return detail::PolyReader(text, arity, false).run();
}

// Univariate text in t (or x).
inline UniPoly parse_uni(std::string_view text) {
  MultiPoly p = detail::PolyReader(text, 1, true).run();
  return p.restrict_to(0, {Rational(0)});
}

inline UniPoly to_uni(const MultiPoly& p) {
  require(p.arity() == 1, "expected a univariate polynomial");
  return p.restrict_to(0, {Rational(0)});
}

}  // namespace symexp
