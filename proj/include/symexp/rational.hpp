#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace symexp {

using Integer = mpz_class;

// Exact rational in lowest terms, denominator positive. Thin value wrapper
// around mpq_class so that expression templates never leak into user code.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : v_(v) {}
  Rational(long v) : v_(v) {}
  Rational(long long v) : v_(Integer(std::to_string(v))) {}
  Rational(unsigned long v) : v_(v) {}
  Rational(const Integer& v) : v_(v) {}
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Accepts "a", "-a", "a/b" with decimal integers.
  static Rational parse(std::string_view s) {
    auto bad = [&] { return PreconditionError("malformed rational '" + std::string(s) + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    auto digits_ok = [](std::string_view t, bool allow_sign) {
      if (t.empty()) return false;
      std::size_t i = 0;
      if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    auto to_int = [](std::string_view t) {
      if (!t.empty() && t[0] == '+') t.remove_prefix(1);
      return Integer(std::string(t));
    };
    if (slash == std::string_view::npos) {
      if (!digits_ok(s, true)) throw bad();
      return Rational(to_int(s));
    }
    auto a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!digits_ok(a, true) || !digits_ok(b, false)) throw bad();
    Integer den = to_int(b);
    if (den == 0) throw bad();
    return Rational(to_int(a), den);
  }

  const mpq_class& raw() const { return v_; }
  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  bool is_one() const { return v_ == 1; }

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }
  Rational inverse() const {
    if (is_zero()) throw PreconditionError("inverse of zero");
    return Rational(mpq_class(1 / v_));
  }
  Rational pow(unsigned e) const {
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), e);
    return Rational(n, d);
  }

  double to_double() const { return v_.get_d(); }

  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw PreconditionError("division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  std::size_t hash() const {
    std::size_t h = mpz_get_ui(v_.get_num_mpz_t()) * 1000003u ^ mpz_get_ui(v_.get_den_mpz_t());
    return h ^ static_cast<std::size_t>(sign() + 1) << 60;
  }

 private:
  mpq_class v_;
};

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

struct RationalHash {
  std::size_t operator()(const Rational& r) const { return r.hash(); }
};

}  // namespace symexp
