#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "unipoly.hpp"

namespace symexp {

using Exponent = std::vector<std::uint32_t>;

inline std::uint64_t exponent_total(const Exponent& e) {
  std::uint64_t s = 0;
  for (auto v : e) s += v;
  return s;
}

// Graded lexicographic order, largest first: higher total degree wins, ties
// broken lexicographically with x1 most significant.
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const {
    auto ta = exponent_total(a), tb = exponent_total(b);
    if (ta != tb) return ta > tb;
    return a > b;
  }
};

// Sparse polynomial in x1..xd over Q. Variable indices in this API are zero
// based: index 0 is x1. Values are immutable once built; degree data is
// computed at construction.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rational, GrlexGreater>;

  explicit MultiPoly(std::size_t arity = 1) : arity_(arity), var_deg_(arity, 0) {}
  MultiPoly(std::size_t arity, TermMap terms) : arity_(arity), terms_(std::move(terms)) { finalize(); }

  static MultiPoly constant(std::size_t arity, const Rational& c) {
    TermMap t;
    if (!c.is_zero()) t.emplace(Exponent(arity, 0), c);
    return MultiPoly(arity, std::move(t));
  }
  static MultiPoly variable(std::size_t arity, std::size_t i) {
    require(i < arity, "variable index out of range");
    Exponent e(arity, 0);
    e[i] = 1;
    return monomial(arity, std::move(e), 1);
  }
  static MultiPoly monomial(std::size_t arity, Exponent e, const Rational& c) {
    require(e.size() == arity, "exponent length differs from arity");
    TermMap t;
    if (!c.is_zero()) t.emplace(std::move(e), c);
    return MultiPoly(arity, std::move(t));
  }
  // u(x_var) viewed in `arity` variables.
  static MultiPoly from_uni(const UniPoly& u, std::size_t arity, std::size_t var) {
    require(var < arity, "variable index out of range");
    TermMap t;
    for (std::size_t k = 0; k < u.coeffs().size(); ++k) {
      if (u.coeffs()[k].is_zero()) continue;
      Exponent e(arity, 0);
      e[var] = static_cast<std::uint32_t>(k);
      t.emplace(std::move(e), u.coeffs()[k]);
    }
    return MultiPoly(arity, std::move(t));
  }

  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_ == 0); }

  Degree total_degree() const {
    if (terms_.empty()) return std::nullopt;
    return total_;
  }
  // Degree in x_i; zero for the zero polynomial.
  std::size_t deg_in(std::size_t i) const {
    require(i < arity_, "variable index out of range");
    return var_deg_[i];
  }
  const std::vector<std::size_t>& var_degrees() const { return var_deg_; }

  Rational coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational constant_term() const { return coeff(Exponent(arity_, 0)); }
  const std::pair<const Exponent, Rational>& leading_term() const {
    require(!terms_.empty(), "leading term of the zero polynomial");
    return *terms_.begin();
  }

  Rational eval(const std::vector<Rational>& x) const {
    require(x.size() == arity_, "evaluation point has wrong dimension");
    std::vector<std::vector<Rational>> pw(arity_);
    for (std::size_t i = 0; i < arity_; ++i) {
      pw[i].resize(var_deg_[i] + 1);
      pw[i][0] = 1;
      for (std::size_t k = 1; k <= var_deg_[i]; ++k) pw[i][k] = pw[i][k - 1] * x[i];
    }
    mpq_class acc;
    for (const auto& [e, c] : terms_) {
      mpq_class t = c.raw();
      for (std::size_t i = 0; i < arity_; ++i)
        if (e[i]) t *= pw[i][e[i]].raw();
      acc += t;
    }
    return Rational(acc);
  }

  MultiPoly partial(std::size_t i) const {
    require(i < arity_, "variable index out of range");
    TermMap out;
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent f = e;
      --f[i];
      out.emplace(std::move(f), c * Rational(static_cast<long>(e[i])));
    }
    return MultiPoly(arity_, std::move(out));
  }

  MultiPoly& operator+=(const MultiPoly& o) { return add_scaled(o, 1); }
  MultiPoly& operator-=(const MultiPoly& o) { return add_scaled(o, -1); }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  MultiPoly operator-() const { return *this * Rational(-1); }
  friend MultiPoly operator*(MultiPoly a, const Rational& s) {
    if (s.is_zero()) return MultiPoly(a.arity_);
    for (auto& kv : a.terms_) kv.second *= s;
    return a;
  }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return std::move(a) * s; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return multiply(a, b); }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = multiply(*this, o); }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned e) const {
    MultiPoly result = constant(arity_, 1), base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  // Substitutes subs[i] for x_i; all substitutes share one arity.
  MultiPoly compose(const std::vector<MultiPoly>& subs) const {
    require(subs.size() == arity_, "compose: need one substitute per variable");
    std::size_t out_arity = subs.empty() ? 1 : subs[0].arity();
    for (const auto& s : subs) require(s.arity() == out_arity, "compose: substitutes differ in arity");
    std::vector<std::vector<MultiPoly>> pw(arity_);
    for (std::size_t i = 0; i < arity_; ++i) {
      pw[i].push_back(constant(out_arity, 1));
      for (std::size_t k = 1; k <= var_deg_[i]; ++k) pw[i].push_back(pw[i].back() * subs[i]);
    }
    MultiPoly acc(out_arity);
    for (const auto& [e, c] : terms_) {
      MultiPoly t = constant(out_arity, c);
      for (std::size_t i = 0; i < arity_; ++i)
        if (e[i]) t = t * pw[i][e[i]];
      acc += t;
    }
    return acc;
  }

  // Univariate polynomial in x_var after fixing every other x_j = point[j].
  UniPoly restrict_to(std::size_t var, const std::vector<Rational>& point) const {
    require(var < arity_ && point.size() == arity_, "restrict_to: bad arguments");
    std::vector<std::vector<Rational>> pw(arity_);
    for (std::size_t i = 0; i < arity_; ++i) {
      if (i == var) continue;
      pw[i].resize(var_deg_[i] + 1);
      pw[i][0] = 1;
      for (std::size_t k = 1; k <= var_deg_[i]; ++k) pw[i][k] = pw[i][k - 1] * point[i];
    }
    std::vector<mpq_class> acc(var_deg_[var] + 1);
    for (const auto& [e, c] : terms_) {
      mpq_class t = c.raw();
      for (std::size_t i = 0; i < arity_; ++i)
        if (i != var && e[i]) t *= pw[i][e[i]].raw();
      acc[e[var]] += t;
    }
    std::vector<Rational> out;
    for (auto& a : acc) out.emplace_back(a);
    return UniPoly(std::move(out));
  }

  // Fixes x_var = value; the result keeps the arity and is free of x_var.
  MultiPoly substitute(std::size_t var, const Rational& value) const {
    require(var < arity_, "variable index out of range");
    std::vector<Rational> pw(var_deg_[var] + 1);
    pw[0] = 1;
    for (std::size_t k = 1; k < pw.size(); ++k) pw[k] = pw[k - 1] * value;
    std::map<Exponent, mpq_class, GrlexGreater> acc;
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      f[var] = 0;
      acc[f] += c.raw() * pw[e[var]].raw();
    }
    TermMap out;
    for (auto& [e, v] : acc)
      if (sgn(v) != 0) out.emplace(e, Rational(v));
    return MultiPoly(arity_, std::move(out));
  }

  // Coefficients as a polynomial in x_var: result[k] multiplies x_var^k.
  std::vector<MultiPoly> coefficients_in(std::size_t var) const {
    require(var < arity_, "variable index out of range");
    std::vector<TermMap> parts(var_deg_[var] + 1);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      f[var] = 0;
      parts[e[var]].emplace(std::move(f), c);
    }
    std::vector<MultiPoly> out;
    for (auto& p : parts) out.emplace_back(arity_, std::move(p));
    return out;
  }

  // Removes x_var, which must not occur.
  MultiPoly drop_variable(std::size_t var) const {
    require(var < arity_ && var_deg_[var] == 0, "drop_variable: variable occurs");
    require(arity_ > 1, "drop_variable: arity would become zero");
    TermMap out;
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      f.erase(f.begin() + static_cast<long>(var));
      out.emplace(std::move(f), c);
    }
    return MultiPoly(arity_ - 1, std::move(out));
  }

  // Re-embeds into `new_arity` variables with x_i sent to x_{target[i]}.
  MultiPoly embed(std::size_t new_arity, const std::vector<std::size_t>& target) const {
    require(target.size() == arity_, "embed: mapping has wrong length");
    TermMap out;
    for (const auto& [e, c] : terms_) {
      Exponent f(new_arity, 0);
      for (std::size_t i = 0; i < arity_; ++i) {
        require(target[i] < new_arity, "embed: target out of range");
        f[target[i]] += e[i];
      }
      auto [it, fresh] = out.emplace(std::move(f), c);
      if (!fresh) it->second += c;
    }
    for (auto it = out.begin(); it != out.end();)
      it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return MultiPoly(new_arity, std::move(out));
  }

  // Integer coefficients, content 1, positive grlex-leading coefficient.
  MultiPoly primitive_normalized() const {
    if (terms_.empty()) return *this;
    Integer l = 1, g = 0;
    for (const auto& kv : terms_) l = lcm(l, kv.second.den());
    for (const auto& kv : terms_) g = gcd(g, kv.second.num() * (l / kv.second.den()));
    Rational s(l, g);
    if (terms_.begin()->second.sign() < 0) s = -s;
    return *this * s;
  }

  std::string str() const;

 private:
  void finalize() {
    var_deg_.assign(arity_, 0);
    total_ = 0;
    for (auto it = terms_.begin(); it != terms_.end();) {
      require(it->first.size() == arity_, "exponent length differs from arity");
      if (it->second.is_zero()) {
        it = terms_.erase(it);
        continue;
      }
      for (std::size_t i = 0; i < arity_; ++i) var_deg_[i] = std::max<std::size_t>(var_deg_[i], it->first[i]);
      total_ = std::max<std::size_t>(total_, exponent_total(it->first));
      ++it;
    }
  }

  MultiPoly& add_scaled(const MultiPoly& o, int sign) {
    require(arity_ == o.arity_, "arity mismatch");
    for (const auto& [e, c] : o.terms_) {
      auto it = terms_.find(e);
      if (it == terms_.end()) {
        terms_.emplace(e, sign > 0 ? c : -c);
      } else {
        if (sign > 0)
          it->second += c;
        else
          it->second -= c;
        if (it->second.is_zero()) terms_.erase(it);
      }
    }
    finalize_degrees_only();
    return *this;
  }

  void finalize_degrees_only() {
    var_deg_.assign(arity_, 0);
    total_ = 0;
    for (const auto& kv : terms_) {
      for (std::size_t i = 0; i < arity_; ++i) var_deg_[i] = std::max<std::size_t>(var_deg_[i], kv.first[i]);
      total_ = std::max<std::size_t>(total_, exponent_total(kv.first));
    }
  }

  static MultiPoly multiply(const MultiPoly& a, const MultiPoly& b) {
    require(a.arity_ == b.arity_, "arity mismatch");
    std::size_t d = a.arity_;
    if (a.is_zero() || b.is_zero()) return MultiPoly(d);
    // Pack exponents into one word when the product's degrees fit.
    std::vector<unsigned> bits(d);
    unsigned used = 0;
    for (std::size_t i = 0; i < d; ++i) {
      std::size_t m = a.var_deg_[i] + b.var_deg_[i];
      unsigned w = 1;
      while ((std::size_t{1} << w) <= m) ++w;
      bits[i] = w;
      used += w;
    }
    if (used > 64) return multiply_slow(a, b);
    auto pack = [&](const Exponent& e) {
      std::uint64_t k = 0;
      for (std::size_t i = 0; i < d; ++i) k = (k << bits[i]) | e[i];
      return k;
    };
    std::vector<std::pair<std::uint64_t, const mpq_class*>> pa, pb;
    for (const auto& kv : a.terms_) pa.emplace_back(pack(kv.first), &kv.second.raw());
    for (const auto& kv : b.terms_) pb.emplace_back(pack(kv.first), &kv.second.raw());
    std::unordered_map<std::uint64_t, mpq_class> acc;
    acc.reserve(std::min<std::size_t>(pa.size() * pb.size(), 1u << 20));
    mpq_class tmp;
    for (const auto& [ka, ca] : pa)
      for (const auto& [kb, cb] : pb) {
        mpq_mul(tmp.get_mpq_t(), ca->get_mpq_t(), cb->get_mpq_t());
        acc[ka + kb] += tmp;
      }
    TermMap out;
    for (auto& [k, v] : acc) {
      if (sgn(v) == 0) continue;
      Exponent e(d);
      std::uint64_t key = k;
      for (std::size_t i = d; i-- > 0;) {
        e[i] = static_cast<std::uint32_t>(key & ((std::uint64_t{1} << bits[i]) - 1));
        key >>= bits[i];
      }
      out.emplace_hint(out.end(), std::move(e), Rational(v));
    }
    return MultiPoly(d, std::move(out));
  }

  static MultiPoly multiply_slow(const MultiPoly& a, const MultiPoly& b) {
    std::map<Exponent, mpq_class, GrlexGreater> acc;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        acc[e] += ca.raw() * cb.raw();
      }
    TermMap out;
    for (auto& [e, v] : acc)
      if (sgn(v) != 0) out.emplace(e, Rational(v));
    return MultiPoly(a.arity_, std::move(out));
  }

  std::size_t arity_;
  TermMap terms_;
  std::vector<std::size_t> var_deg_;
  std::size_t total_ = 0;
};

// Exact division by grlex-leading terms; throws InternalError if b does not
// divide a.
inline MultiPoly exact_div(MultiPoly a, const MultiPoly& b) {
  require(!b.is_zero(), "multivariate division by zero");
  require(a.arity() == b.arity(), "arity mismatch");
  const auto& [lb_e, lb_c] = b.leading_term();
  Rational inv = lb_c.inverse();
  MultiPoly::TermMap q;
  while (!a.is_zero()) {
    const auto& [e, c] = a.leading_term();
    Exponent qe = e;
    for (std::size_t i = 0; i < qe.size(); ++i) {
      ensure(qe[i] >= lb_e[i], "exact_div: not divisible");
      qe[i] -= lb_e[i];
    }
    Rational qc = c * inv;
    q.emplace(qe, qc);
    a -= MultiPoly::monomial(a.arity(), qe, qc) * b;
  }
  return MultiPoly(b.arity(), std::move(q));
}

inline std::string variable_name(std::size_t i, std::size_t arity) {
  if (arity <= 3) return std::string(1, "xyz"[i]);
  return "x" + std::to_string(i + 1);
}

inline std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    bool neg = c.sign() < 0;
    Rational m = c.abs();
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    bool any = exponent_total(e) > 0;
    std::string mono;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += variable_name(i, arity_);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (!any) {
      out += m.str();
    } else if (m.is_one()) {
      out += mono;
    } else {
      out += m.str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace symexp
