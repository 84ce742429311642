#pragma once

#include <optional>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "unipoly.hpp"

namespace symexp {

// An endpoint on the extended real line.
struct RealBound {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  Rational value;

  static RealBound neg_inf() { return {Kind::NegInf, 0}; }
  static RealBound pos_inf() { return {Kind::PosInf, 0}; }
  static RealBound at(const Rational& v) { return {Kind::Finite, v}; }
};

inline bool bound_less(const RealBound& a, const RealBound& b) {
  using K = RealBound::Kind;
  if (a.kind == K::PosInf || b.kind == K::NegInf) return false;
  if (a.kind == K::NegInf || b.kind == K::PosInf) return true;
  return a.value < b.value;
}

// p scaled by a positive rational to integer coefficients with content 1.
inline UniPoly positive_primitive(const UniPoly& p) {
  if (p.is_zero()) return p;
  UniPoly q = p.primitive();
  return q.lc().sign() == p.lc().sign() ? q : -q;
}

// Sign of p(a/b), b > 0, by integer Horner on b^deg p * p(a/b). p must have
// integer coefficients.
inline int sign_at_integer_poly(const UniPoly& p, const Rational& x) {
  if (p.is_zero()) return 0;
  const auto& c = p.coeffs();
  Integer a = x.num(), b = x.den(), acc = c.back().num(), pb = 1;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    pb *= b;
    acc *= a;
    if (!c[k].is_zero()) acc += c[k].num() * pb;
  }
  return sgn(acc);
}

inline bool has_integer_coeffs(const UniPoly& p) {
  for (const auto& c : p.coeffs())
    if (!c.is_integer()) return false;
  return true;
}

// Sign of p at a bound; at infinity it is the sign of the dominant term.
inline int sign_at(const UniPoly& p, const RealBound& b) {
  if (p.is_zero()) return 0;
  switch (b.kind) {
    case RealBound::Kind::PosInf:
      return p.lc().sign();
    case RealBound::Kind::NegInf:
      return p.deg() % 2 == 0 ? p.lc().sign() : -p.lc().sign();
    default:
      return has_integer_coeffs(p) ? sign_at_integer_poly(p, b.value) : p.eval(b.value).sign();
  }
}

// Sturm sequence p, p', -rem(...), ..., each term rescaled by a positive
// constant to integer coefficients (signs, hence variation counts, unchanged).
inline std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  std::vector<UniPoly> seq{positive_primitive(p), positive_primitive(p.derivative())};
  while (!seq.back().is_zero()) {
    UniPoly r = seq[seq.size() - 2] % seq.back();
    seq.push_back(positive_primitive(-r));
  }
  seq.pop_back();
  return seq;
}

inline std::size_t sign_variations(const std::vector<UniPoly>& seq, const RealBound& b) {
  std::size_t v = 0;
  int last = 0;
  for (const auto& q : seq) {
    int s = sign_at(q, b);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// Number of distinct real roots of p in (lo, hi].
inline std::size_t sturm_count(const UniPoly& p, const RealBound& lo, const RealBound& hi) {
  if (p.is_zero()) throw PreconditionError("sturm_count of the zero polynomial");
  if (!bound_less(lo, hi)) throw PreconditionError("sturm_count needs lo < hi");
  UniPoly q = squarefree_part(p);
  if (q.is_constant()) return 0;
  auto seq = sturm_sequence(q);
  return sign_variations(seq, lo) - sign_variations(seq, hi);
}

inline std::size_t sturm_count(const UniPoly& p, const Rational& lo, const Rational& hi) {
  return sturm_count(p, RealBound::at(lo), RealBound::at(hi));
}

inline std::size_t count_real_roots(const UniPoly& p) {
  return sturm_count(p, RealBound::neg_inf(), RealBound::pos_inf());
}

// Open interval (lo, hi) holding one root; `exact` is set when the root is
// known to be that rational.
struct RootInterval {
  Rational lo, hi;
  std::optional<Rational> exact;

  Rational width() const { return hi - lo; }
};

struct IsolatingIntervals {
  UniPoly squarefree;  // monic square-free part of the input
  std::vector<RootInterval> roots;  // increasing order

  std::size_t size() const { return roots.size(); }
};

// Power of two B with every real root strictly inside (-B, B), from
// Fujiwara's bound 2 max |a_{n-k}/a_n|^{1/k}.
inline Rational root_bound(const UniPoly& p) {
  UniPoly q = p.primitive();
  std::size_t n = q.deg();
  auto bits = [](const Integer& v) { return static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)); };
  long lead = bits(q.lc().num()) - 1;  // 2^lead <= |a_n|
  long e = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const Rational& c = q.coeff(n - k);
    if (c.is_zero()) continue;
    long num = bits(c.num()) - lead;  // |a_{n-k}/a_n| < 2^num
    long kk = static_cast<long>(k);
    long ek = num > 0 ? (num + kk - 1) / kk : 0;
    e = std::max(e, ek);
  }
  Rational b = 1;
  for (long i = 0; i <= e; ++i) b *= 2;
  return b;
}

namespace detail {

// A small open interval around the rational root r of the square-free q that
// holds no other root and whose endpoints are not roots.
inline RootInterval exact_neighbourhood(const std::vector<UniPoly>& seq, const Rational& r,
                                        Rational eps) {
  while (true) {
    Rational lo = r - eps, hi = r + eps;
    if (sign_at(seq[0], RealBound::at(lo)) != 0 && sign_at(seq[0], RealBound::at(hi)) != 0 &&
        sign_variations(seq, RealBound::at(lo)) - sign_variations(seq, RealBound::at(hi)) == 1)
      return {lo, hi, r};
    eps /= 2;
  }
}

inline void isolate_rec(const UniPoly& q, const std::vector<UniPoly>& seq, const Rational& lo, std::size_t vlo,
                        const Rational& hi, std::size_t vhi, std::vector<RootInterval>& out) {
  auto is_root = [&](const Rational& x) { return sign_at(seq[0], RealBound::at(x)) == 0; };
  std::size_t n = vlo - vhi;
  if (n == 0) return;
  if (n == 1) {
    if (is_root(hi)) {
      out.push_back(exact_neighbourhood(seq, hi, (hi - lo) / 2));
      return;
    }
    // lo may itself be a root (counted by the neighbouring piece); move it.
    Rational a = lo, b = hi;
    while (is_root(a)) {
      Rational mid = (a + b) / 2;
      if (is_root(mid)) {
        out.push_back(exact_neighbourhood(seq, mid, (b - mid) / 2));
        return;
      }
      if (sign_variations(seq, RealBound::at(mid)) - vhi == 1)
        a = mid;
      else
        b = mid;
    }
    out.push_back({a, b, std::nullopt});
    return;
  }
  Rational mid = (lo + hi) / 2;
  std::size_t vm = sign_variations(seq, RealBound::at(mid));
  isolate_rec(q, seq, lo, vlo, mid, vm, out);
  isolate_rec(q, seq, mid, vm, hi, vhi, out);
}

}  // namespace detail

inline IsolatingIntervals isolate_real_roots(const UniPoly& p) {
  if (p.is_zero()) throw PreconditionError("isolate_real_roots of the zero polynomial");
  IsolatingIntervals res;
  res.squarefree = squarefree_part(p);
  const UniPoly& q = res.squarefree;
  if (q.is_constant()) return res;
  if (q.deg() == 1) {
    Rational r = -q.coeff(0) / q.lc();
    res.roots.push_back({r - 1, r + 1, r});
    return res;
  }
  auto seq = sturm_sequence(q);
  Rational b = root_bound(q);
  detail::isolate_rec(q, seq, -b, sign_variations(seq, RealBound::at(-b)), b,
                      sign_variations(seq, RealBound::at(b)), res.roots);
  return res;
}

// Halves the interval until its width is at most `width`. q must be the
// square-free polynomial the interval was isolated for.
inline void refine(const UniPoly& q, RootInterval& iv, const Rational& width) {
  while (iv.width() > width) {
    if (iv.exact) {
      Rational w = iv.width() / 4;
      iv.lo = *iv.exact - w;
      iv.hi = *iv.exact + w;
      continue;
    }
    Rational mid = (iv.lo + iv.hi) / 2;
    int sm = sign_at(q, RealBound::at(mid));
    if (sm == 0) {
      iv.exact = mid;
      continue;
    }
    if (sign_at(q, RealBound::at(iv.lo)) != sm)
      iv.hi = mid;
    else
      iv.lo = mid;
  }
}

// One bisection step; keeps the invariant that endpoints are not roots.
inline void bisect_once(const UniPoly& q, RootInterval& iv) { refine(q, iv, iv.width() / 2); }

// Closed rational interval, used for enclosures.
struct Interval {
  Rational lo, hi;

  bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
  bool overlaps(const Rational& a, const Rational& b) const { return lo < b && a < hi; }
};

inline Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

inline Interval operator*(const Interval& a, const Interval& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Rational lo = c[0], hi = c[0];
  for (const auto& v : c) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return {lo, hi};
}

// Horner enclosure of {p(x) : x in [lo, hi]}.
inline Interval eval_interval(const UniPoly& p, const Interval& x) {
  Interval acc{0, 0};
  const auto& c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + Interval{c[k], c[k]};
  return acc;
}

inline Interval eval_interval(const UniPoly& p, const RootInterval& iv) {
  if (iv.exact) {
    Rational v = p.eval(*iv.exact);
    return {v, v};
  }
  return eval_interval(p, Interval{iv.lo, iv.hi});
}

}  // namespace symexp
