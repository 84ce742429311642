#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace symexp {

// Degree of a polynomial. The zero polynomial has no degree (nullopt).
using Degree = std::optional<std::size_t>;

// Dense univariate polynomial over Q, c_[i] is the coefficient of x^i.
// The coefficient vector is trimmed, so the zero polynomial is empty.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static UniPoly constant(const Rational& c) { return UniPoly(std::vector<Rational>{c}); }
  static UniPoly monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return UniPoly(std::move(v));
  }
  static UniPoly x() { return monomial(1, 1); }
  // Monic linear factor x - r.
  static UniPoly linear_root(const Rational& r) { return UniPoly({-r, 1}); }

  Degree degree() const {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  // Degree of a polynomial known to be nonzero.
  std::size_t deg() const {
    if (c_.empty()) throw PreconditionError("degree of the zero polynomial");
    return c_.size() - 1;
  }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& lc() const {
    if (c_.empty()) throw PreconditionError("leading coefficient of the zero polynomial");
    return c_.back();
  }

  Rational eval(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= x;
      acc += *it;
    }
    return acc;
  }

  UniPoly compose(const UniPoly& g) const {
    UniPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + constant(*it);
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return UniPoly(std::move(d));
  }

  // Antiderivative with zero constant term.
  UniPoly integral() const {
    if (c_.empty()) return {};
    std::vector<Rational> d(c_.size() + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) d[i + 1] = c_[i] / Rational(static_cast<long>(i + 1));
    return UniPoly(std::move(d));
  }

  UniPoly monic() const {
    if (c_.empty()) return {};
    return *this * lc().inverse();
  }

  // Integer coefficients with content 1 and positive leading coefficient.
  UniPoly primitive() const {
    if (c_.empty()) return {};
    Integer l = 1, g = 0;
    for (const auto& a : c_) l = lcm(l, a.den());
    std::vector<Rational> out;
    out.reserve(c_.size());
    for (const auto& a : c_) {
      Integer n = a.num() * (l / a.den());
      g = gcd(g, n);
      out.emplace_back(n);
    }
    if (c_.back().sign() < 0) g = -g;
    for (auto& a : out) a = a / Rational(g);
    return UniPoly(std::move(out));
  }

  UniPoly pow(unsigned e) const {
    UniPoly result = constant(1), base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  // x -> x + a
  UniPoly shift(const Rational& a) const { return compose(UniPoly({a, 1})); }
  // x -> s x
  UniPoly scale_arg(const Rational& s) const {
    std::vector<Rational> v = c_;
    Rational p = 1;
    for (auto& a : v) {
      a *= p;
      p *= s;
    }
    return UniPoly(std::move(v));
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  UniPoly operator-() const { return *this * Rational(-1); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpq_class> acc(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += a.c_[i].raw() * b.c_[j].raw();
    }
    std::vector<Rational> out;
    out.reserve(acc.size());
    for (auto& v : acc) out.emplace_back(v);
    return UniPoly(std::move(out));
  }
  friend UniPoly operator*(UniPoly a, const Rational& s) {
    if (s.is_zero()) return {};
    for (auto& c : a.c_) c *= s;
    return a;
  }
  friend UniPoly operator*(const Rational& s, UniPoly a) { return std::move(a) * s; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  std::string str(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

// Quotient and remainder, b nonzero.
inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  if (a.is_zero() || a.deg() < b.deg()) return {UniPoly(), a};
  std::vector<Rational> r = a.coeffs(), q(a.deg() - b.deg() + 1);
  const auto& bc = b.coeffs();
  Rational inv = b.lc().inverse();
  std::size_t db = b.deg();
  for (std::size_t k = q.size(); k-- > 0;) {
    Rational f = r[k + db] * inv;
    q[k] = f;
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= f * bc[j];
  }
  r.resize(db);
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

inline UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

// Exact quotient; throws if b does not divide a.
inline UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divmod(a, b);
  ensure(r.is_zero(), "exact_div: nonzero remainder");
  return q;
}

// Monic gcd. gcd(0, b) = monic(b).
inline UniPoly gcd(UniPoly a, UniPoly b) {
  if (a.is_zero() && b.is_zero()) throw PreconditionError("gcd of two zero polynomials");
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = r.is_zero() ? r : r.monic();
  }
  return a.monic();
}

inline UniPoly squarefree_part(const UniPoly& p) {
  if (p.is_zero()) throw PreconditionError("square-free part of zero");
  if (p.is_constant()) return UniPoly::constant(1);
  return exact_div(p, gcd(p, p.derivative())).monic();
}

// Res(f, g) by the Euclidean recurrence. Both arguments nonzero.
inline Rational resultant(UniPoly f, UniPoly g) {
  if (f.is_zero() || g.is_zero()) return 0;
  Rational acc = 1;
  while (true) {
    std::size_t m = f.deg(), n = g.deg();
    if (n == 0) return acc * g.lc().pow(static_cast<unsigned>(m));
    if (m == 0) return acc * f.lc().pow(static_cast<unsigned>(n));
    if (m < n) {
      if ((m * n) % 2 == 1) acc = -acc;
      std::swap(f, g);
      continue;
    }
    UniPoly r = f % g;
    if (r.is_zero()) return 0;
    // Res(f,g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r)
    if ((m * n) % 2 == 1) acc = -acc;
    acc *= g.lc().pow(static_cast<unsigned>(m - r.deg()));
    f = std::move(g);
    g = std::move(r);
  }
}

// Newton interpolation through (xs[i], ys[i]) with distinct xs.
inline UniPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  require(xs.size() == ys.size() && !xs.empty(), "interpolate: size mismatch");
  std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  UniPoly acc = UniPoly::constant(dd[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) acc = acc * UniPoly::linear_root(xs[k]) + UniPoly::constant(dd[k]);
  return acc;
}

inline std::string UniPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Rational& a = c_[k];
    if (a.is_zero()) continue;
    bool neg = a.sign() < 0;
    Rational m = a.abs();
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    bool unit = m.is_one() && k > 0;
    if (!unit) out += m.str();
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

// Dense determinant over Q by Gaussian elimination.
inline Rational determinant(std::vector<std::vector<Rational>> m) {
  std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    Rational inv = m[k][k].inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      Rational f = m[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

// Sylvester determinant with formal degrees m >= deg f, n >= deg g.
// Agrees with resultant(f, g) when the formal degrees are the true ones.
inline Rational sylvester_determinant(const UniPoly& f, std::size_t m, const UniPoly& g, std::size_t n) {
  std::size_t size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = f.coeff(m - k);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = g.coeff(n - k);
  return determinant(std::move(s));
}

}  // namespace symexp
