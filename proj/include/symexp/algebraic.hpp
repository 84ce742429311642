#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "realroots.hpp"
#include "unipoly.hpp"

namespace symexp {

// A real algebraic number alpha given by a square-free polynomial m and an
// isolating interval. Elements of Q(alpha) are UniPolys reduced modulo m.
//
// Zero tests split m lazily: when gcd(m, e) has alpha as a root, m shrinks
// to that gcd; otherwise it drops that factor. Either way later reductions
// modulo m stay correct for alpha.
class RealAlgebraic {
 public:
  RealAlgebraic(const UniPoly& squarefree, RootInterval iv) : m_(positive_primitive(squarefree)), iv_(std::move(iv)) {
    require(!m_.is_constant(), "RealAlgebraic needs a nonconstant polynomial");
    settle();
  }
  static RealAlgebraic rational(const Rational& r) { return RealAlgebraic(UniPoly::linear_root(r), {r - 1, r + 1, r}); }

  const UniPoly& minpoly_factor() const { return m_; }
  const RootInterval& interval() const { return iv_; }
  std::optional<Rational> as_rational() const { return iv_.exact; }

  UniPoly reduce(const UniPoly& e) const { return e % m_; }

  // Sign of e(alpha).
  int sign_of(const UniPoly& e) {
    if (iv_.exact) return e.eval(*iv_.exact).sign();
    UniPoly r = reduce(e);
    if (r.is_zero()) return 0;
    UniPoly g = gcd(m_, r);
    if (!g.is_constant()) {
      if (sturm_count(g, iv_.lo, iv_.hi) == 1) {
        m_ = positive_primitive(g);
        settle();
        return 0;
      }
      m_ = positive_primitive(exact_div(m_, g));
      settle();
      if (iv_.exact) return e.eval(*iv_.exact).sign();
      r = reduce(e);
    }
    for (int guard = 0; guard < 100000; ++guard) {
      Interval v = eval_interval(r, iv_);
      if (!v.contains_zero()) return v.lo.sign();
      bisect_once(m_, iv_);
      if (iv_.exact) {
        settle();
        return e.eval(*iv_.exact).sign();
      }
    }
    throw InternalError("sign_of: refinement did not separate from zero");
  }

  bool is_zero(const UniPoly& e) { return sign_of(e) == 0; }

  // Inverse of a nonzero element.
  UniPoly inverse(const UniPoly& e) {
    if (sign_of(e) == 0) throw InternalError("inverse of zero in Q(alpha)");
    if (iv_.exact) return UniPoly::constant(e.eval(*iv_.exact).inverse());
    // After the zero test gcd(m, e) = 1; run extended Euclid.
    UniPoly r0 = m_, r1 = reduce(e), s0, s1 = UniPoly::constant(1);
    while (!r1.is_constant()) {
      auto [q, r] = divmod(r0, r1);
      UniPoly s = s0 - q * s1;
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    ensure(!r1.is_zero(), "inverse: element shares a factor with the modulus");
    return reduce(s1 * r1.lc().inverse());
  }

  UniPoly mul(const UniPoly& a, const UniPoly& b) const { return reduce(a * b); }

  // Shrinks the isolating interval to width at most w.
  void refine_to(const Rational& w) {
    refine(m_, iv_, w);
    settle();
  }

 private:
  // Endpoints are never roots of m, so they are not roots of any factor.
  void settle() {
    if (iv_.exact)
      m_ = UniPoly::linear_root(*iv_.exact);
    else if (m_.deg() == 1)
      iv_.exact = -m_.coeff(0) / m_.lc();
  }

  UniPoly m_;
  RootInterval iv_;
};

// Polynomial in y over Q(alpha); coefficient k multiplies y^k.
using AlgPoly = std::vector<UniPoly>;

inline void alg_trim(RealAlgebraic& a, AlgPoly& p) {
  for (auto& c : p) c = a.reduce(c);
  while (!p.empty() && a.is_zero(p.back())) p.pop_back();
  for (auto& c : p) c = a.reduce(c);
}

inline AlgPoly alg_rem(RealAlgebraic& a, AlgPoly f, AlgPoly g) {
  alg_trim(a, g);
  ensure(!g.empty(), "alg_rem: division by zero");
  alg_trim(a, f);
  UniPoly inv = a.inverse(g.back());
  while (f.size() >= g.size()) {
    UniPoly factor = a.mul(f.back(), inv);
    std::size_t shift = f.size() - g.size();
    for (std::size_t j = 0; j < g.size(); ++j) f[shift + j] = a.reduce(f[shift + j] - factor * g[j]);
    f.pop_back();
    alg_trim(a, f);
  }
  return f;
}

// Monic gcd over Q(alpha); empty result means both inputs vanish.
inline AlgPoly alg_gcd(RealAlgebraic& a, AlgPoly f, AlgPoly g) {
  alg_trim(a, f);
  alg_trim(a, g);
  while (!g.empty()) {
    AlgPoly r = alg_rem(a, f, g);
    f = std::move(g);
    g = std::move(r);
  }
  if (f.empty()) return f;
  UniPoly inv = a.inverse(f.back());
  for (auto& c : f) c = a.mul(c, inv);
  return f;
}

inline AlgPoly alg_derivative(const AlgPoly& p) {
  AlgPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<long>(k)));
  return d;
}

// Number of distinct real roots of a nonzero p in Q(alpha)[y].
inline std::size_t alg_count_real_roots(RealAlgebraic& a, AlgPoly p) {
  alg_trim(a, p);
  require(!p.empty(), "alg_count_real_roots of the zero polynomial");
  if (p.size() == 1) return 0;
  std::vector<AlgPoly> seq{p, alg_derivative(p)};
  alg_trim(a, seq.back());
  while (!seq.back().empty()) {
    AlgPoly r = alg_rem(a, seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  seq.pop_back();
  auto variations = [&](bool at_plus) {
    std::size_t v = 0;
    int last = 0;
    for (auto& q : seq) {
      alg_trim(a, q);
      if (q.empty()) continue;
      int s = a.sign_of(q.back());
      if (!at_plus && (q.size() - 1) % 2 == 1) s = -s;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  };
  std::size_t vm = variations(false), vp = variations(true);
  return vm - vp;
}

}  // namespace symexp
