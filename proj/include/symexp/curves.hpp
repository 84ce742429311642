#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "algebraic.hpp"
#include "bivariate.hpp"
#include "errors.hpp"
#include "multipoly.hpp"
#include "realroots.hpp"
#include "resultant.hpp"
#include "unipoly.hpp"

namespace symexp {

enum class Transform { Identity, LogAbs };

inline std::string transform_name(Transform t) { return t == Transform::Identity ? "id" : "log"; }

inline Transform parse_transform(const std::string& s) {
  if (s == "id" || s == "identity") return Transform::Identity;
  if (s == "log" || s == "logabs" || s == "log-abs") return Transform::LogAbs;
  throw PreconditionError("unknown transform '" + s + "' (expected id or log)");
}

// The curve {(fx(p(t)), fy(q(t)))}; fx = log-abs means log|p(t)|, defined
// where p(t) != 0.
struct ParamCurve {
  UniPoly p, q;
  Transform fx = Transform::Identity, fy = Transform::Identity;

  ParamCurve(UniPoly p_, UniPoly q_, Transform fx_ = Transform::Identity, Transform fy_ = Transform::Identity)
      : p(std::move(p_)), q(std::move(q_)), fx(fx_), fy(fy_) {
    require(!(p.is_constant() && q.is_constant()), "curve needs a nonconstant coordinate");
    require(fx == Transform::Identity || !p.is_zero(), "log|p| with p = 0 has empty domain");
    require(fy == Transform::Identity || !q.is_zero(), "log|q| with q = 0 has empty domain");
  }

  std::size_t delta() const {
    return std::max(p.is_zero() ? 0 : p.deg(), q.is_zero() ? 0 : q.deg());
  }
  bool both_identity() const { return fx == Transform::Identity && fy == Transform::Identity; }
};

// A point or translation vector in the plane of a curve. On an identity axis
// the coordinate is the rational itself. On a log-abs axis it is carried by
// its exponential: a positive rational r stands for the coordinate log r, so
// translating by it multiplies |.| by r.
struct PlaneVector {
  Rational x, y;
};

inline bool is_neutral(Transform t, const Rational& v) { return t == Transform::Identity ? v.is_zero() : v.is_one(); }

inline void check_vector(const ParamCurve& c, const PlaneVector& a) {
  require(c.fx == Transform::Identity || a.x.sign() > 0, "log-axis coordinate must be a positive ratio");
  require(c.fy == Transform::Identity || a.y.sign() > 0, "log-axis coordinate must be a positive ratio");
}

struct ImplicitCurve {
  MultiPoly F{2};
  std::size_t degree_bound = 0;
};

struct Translation {
  Rational a, b;
};
struct DiagonalScaling {
  Rational alpha, beta;
};
struct Skew {
  Rational l, lambda;
};
using AffineMapKind = std::variant<Translation, DiagonalScaling, Skew>;

struct MonomialInvariance {
  Integer m, n;
  Rational r;
};

// Right-hand side of a line equation: a rational, or log of a positive rational.
struct LineConstant {
  Rational value;
  bool is_log = false;

  std::string str() const {
    if (!is_log) return value.str();
    if (value.is_one()) return "0";
    return "log(" + value.str() + ")";
  }
  friend bool operator==(const LineConstant& a, const LineConstant& b) {
    if (a.is_log != b.is_log) {
      const LineConstant& l = a.is_log ? a : b;
      const LineConstant& r = a.is_log ? b : a;
      return l.value.is_one() && r.value.is_zero();
    }
    return a.value == b.value;
  }
};

// alpha X + beta Y = gamma in the transformed coordinates.
struct Line {
  Rational alpha, beta;
  LineConstant gamma;
};

struct LineVerdict {
  std::optional<Line> line;  // empty: NotLine
  bool is_line() const { return line.has_value(); }
};

namespace detail {

// Scales (alpha, beta, gamma) to coprime integers, first nonzero of alpha,
// beta positive. Only for rational gamma.
inline Line normalize_rational_line(Rational a, Rational b, Rational c) {
  Integer l = lcm(lcm(a.den(), b.den()), c.den());
  Integer g = gcd(gcd(a.num() * (l / a.den()), b.num() * (l / b.den())), c.num() * (l / c.den()));
  Rational s(l, g);
  if ((a.is_zero() ? b : a).sign() < 0) s = -s;
  return {a * s, b * s, {c * s, false}};
}

inline UniPoly key_poly(const UniPoly& p, Transform t) { return t == Transform::Identity ? p : p * p; }

// Image of the key polynomial under a shift: v + a, or r^2 v on a log axis.
inline UniPoly shifted_key(const UniPoly& key, Transform t, const Rational& a) {
  return t == Transform::Identity ? key + UniPoly::constant(a) : key * (a * a);
}

}  // namespace detail

inline LineVerdict line_containment(const ParamCurve& c) {
  using detail::normalize_rational_line;
  const bool lx = c.fx == Transform::LogAbs, ly = c.fy == Transform::LogAbs;
  auto const_line = [](bool x_axis, const Rational& v, bool log_axis) {
    Line l{x_axis ? Rational(1) : Rational(0), x_axis ? Rational(0) : Rational(1), {v, false}};
    if (log_axis) {
      l.gamma = {v.abs(), true};
      return l;
    }
    return normalize_rational_line(l.alpha, l.beta, v);
  };
  if (c.p.is_constant()) return {const_line(true, c.p.coeff(0), lx)};
  if (c.q.is_constant()) return {const_line(false, c.q.coeff(0), ly)};
  if (!lx && !ly) {
    // q - lambda p constant with lambda = lc(q)/lc(p) when degrees agree.
    if (c.p.deg() != c.q.deg()) return {};
    Rational lambda = c.q.lc() / c.p.lc();
    UniPoly rest = c.q - c.p * lambda;
    if (!rest.is_constant()) return {};
    // lambda X - Y = -mu
    return {normalize_rational_line(lambda, -1, -rest.coeff(0))};
  }
  if (lx != ly) return {};
  // |p|^m = C |q|^n with m deg p = n deg q.
  std::size_t dp = c.p.deg(), dq = c.q.deg(), g = std::gcd(dp, dq);
  unsigned m = static_cast<unsigned>(dq / g), n = static_cast<unsigned>(dp / g);
  Rational cp = c.p.lc().pow(2 * m), cq = c.q.lc().pow(2 * n);
  if (c.p.pow(2 * m) * cq != c.q.pow(2 * n) * cp) return {};
  Rational big_c = c.p.lc().abs().pow(m) / c.q.lc().abs().pow(n);
  return {Line{Rational(static_cast<long>(m)), Rational(-static_cast<long>(n)), {big_c, true}}};
}

// F(p(t), q(t)) as a univariate polynomial.
inline UniPoly substitute_curve(const MultiPoly& f, const UniPoly& p, const UniPoly& q) {
  require(f.arity() == 2, "substitute_curve needs arity 2");
  std::vector<UniPoly> pp{UniPoly::constant(1)}, qp{UniPoly::constant(1)};
  for (std::size_t k = 0; k < f.deg_in(0); ++k) pp.push_back(pp.back() * p);
  for (std::size_t k = 0; k < f.deg_in(1); ++k) qp.push_back(qp.back() * q);
  UniPoly acc;
  for (const auto& [e, c] : f.terms()) acc += pp[e[0]] * qp[e[1]] * c;
  return acc;
}

inline ImplicitCurve implicitize(const UniPoly& p, const UniPoly& q) {
  require(!(p.is_constant() && q.is_constant()), "implicitize needs a nonconstant coordinate");
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  MultiPoly raw(2);
  if (p.is_constant()) {
    raw = x - MultiPoly::constant(2, p.coeff(0));
  } else if (q.is_constant()) {
    raw = y - MultiPoly::constant(2, q.coeff(0));
  } else {
    // Res_u(x - p(u), y - q(u)) in Q[x, y, u].
    MultiPoly f = MultiPoly::variable(3, 0) - MultiPoly::from_uni(p, 3, 2);
    MultiPoly g = MultiPoly::variable(3, 1) - MultiPoly::from_uni(q, 3, 2);
    raw = sylvester_resultant(f, g, 2).drop_variable(2);
  }
  // Square-free part, keeping the resultant's sign.
  MultiPoly sq = raw;
  if (!raw.is_constant()) {
    MultiPoly common = bivariate_gcd(raw, bivariate_gcd(raw.partial(0), raw.partial(1)));
    sq = exact_div(raw, common);
  }
  MultiPoly prim = sq.primitive_normalized();
  if (prim.leading_term().second.sign() != sq.leading_term().second.sign()) prim = -prim;
  std::size_t dp = p.is_zero() ? 0 : p.deg(), dq = q.is_zero() ? 0 : q.deg();
  ensure(substitute_curve(prim, p, q).is_zero(), "implicitize: F(p(t), q(t)) does not vanish");
  ensure(*prim.total_degree() <= std::max<std::size_t>(dp + dq, 1), "implicitize: degree bound violated");
  return {prim, 2 * std::max(dp, dq)};
}

inline MultiPoly apply_affine(const MultiPoly& f, const AffineMapKind& t) {
  require(f.arity() == 2, "affine maps act on bivariate polynomials");
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  return std::visit(
      [&](const auto& m) -> MultiPoly {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Translation>) {
          return f.compose({x + MultiPoly::constant(2, m.a), y + MultiPoly::constant(2, m.b)});
        } else if constexpr (std::is_same_v<M, DiagonalScaling>) {
          return f.compose({x * m.alpha, y * m.beta});
        } else {
          return f.compose({x + MultiPoly::constant(2, m.l), y * m.lambda});
        }
      },
      t);
}

inline void check_affine(const AffineMapKind& t) {
  std::visit(
      [](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Translation>) {
          require(!(m.a.is_zero() && m.b.is_zero()), "translation by the zero vector");
        } else if constexpr (std::is_same_v<M, DiagonalScaling>) {
          require(!m.alpha.is_zero() && !m.beta.is_zero(), "scaling factors must be nonzero");
        } else {
          require(!m.l.is_zero() && !m.lambda.is_zero(), "skew needs l != 0 and lambda != 0");
        }
      },
      t);
}

// c with F o T = c F, if any.
inline std::optional<Rational> affine_associate(const MultiPoly& f, const AffineMapKind& t) {
  require(!f.is_zero(), "affine_associate of the zero polynomial");
  check_affine(t);
  MultiPoly g = apply_affine(f, t);
  const auto& [ef, cf] = f.leading_term();
  const auto& [eg, cg] = g.leading_term();
  if (ef != eg) return std::nullopt;
  Rational c = cg / cf;
  if (g != f * c) return std::nullopt;
  return c;
}

namespace detail {

inline void add_valuations(Integer v, int sign, std::map<Integer, long>& out) {
  v = abs(v);
  for (Integer p = 2; p * p <= v; ++p) {
    while (v % p == 0) {
      out[p] += sign;
      v /= p;
    }
  }
  if (v > 1) out[v] += sign;
}

inline std::map<Integer, long> valuations(const Rational& r) {
  std::map<Integer, long> out;
  add_valuations(r.num(), 1, out);
  add_valuations(r.den(), -1, out);
  return out;
}

}  // namespace detail

// Generator (m, n) of {(u, v) : alpha^u beta^v = 1} and the level r with
// C inside {x^m y^n = r}. The lattice is computed on prime-exponent vectors
// plus a sign-parity coordinate, so (m, n) can be twice a primitive vector
// when the signs force it.
inline std::optional<MonomialInvariance> monomial_invariance(const MultiPoly& f, const Rational& alpha,
                                                             const Rational& beta) {
  require(f.arity() == 2 && !f.is_zero(), "monomial_invariance needs nonzero bivariate F");
  require(!f.is_constant(), "monomial_invariance needs nonconstant F");
  require(!alpha.is_zero() && !beta.is_zero(), "scaling factors must be nonzero");
  bool free_x = false, free_y = false;
  for (const auto& [e, c] : f.terms()) {
    free_x |= e[0] == 0;
    free_y |= e[1] == 0;
  }
  require(free_x && free_y, "F must not be divisible by x or y");
  auto va = detail::valuations(alpha), vb = detail::valuations(beta);
  require(!(va.empty() && vb.empty()), "(alpha, beta) has finite multiplicative order");
  if (!affine_associate(f, DiagonalScaling{alpha, beta})) return std::nullopt;

  // Integer kernel of u*va + v*vb = 0.
  std::set<Integer> primes;
  for (auto& kv : va) primes.insert(kv.first);
  for (auto& kv : vb) primes.insert(kv.first);
  std::optional<std::pair<Integer, Integer>> gen;
  for (const auto& p : primes) {
    Integer a = va.count(p) ? Integer(va[p]) : Integer(0), b = vb.count(p) ? Integer(vb[p]) : Integer(0);
    if (a == 0 && b == 0) continue;
    Integer g = gcd(a, b);
    std::pair<Integer, Integer> cand{b / g, -a / g};
    if (!gen) {
      gen = cand;
    } else if (!(gen->first == cand.first && gen->second == cand.second) &&
               !(gen->first == -cand.first && gen->second == -cand.second)) {
      // Independent constraints: only the zero vector survives. A nonconstant
      // F fixed up to scalars by such a scaling cannot avoid x and y.
      throw InternalError("monomial_invariance: trivial lattice for an associate-invariant F");
    }
  }
  ensure(gen.has_value(), "monomial_invariance: no prime constraints");
  Integer m = gen->first, n = gen->second;
  int parity = 0;
  if (alpha.sign() < 0 && m % 2 != 0) parity ^= 1;
  if (beta.sign() < 0 && n % 2 != 0) parity ^= 1;
  if (parity) {
    m *= 2;
    n *= 2;
  }
  if (m < 0 || (m == 0 && n < 0)) {
    m = -m;
    n = -n;
  }
  // Every support point is (i0, j0) + k (m, n).
  std::vector<std::pair<long, Rational>> ks;
  const Exponent& e0 = f.terms().begin()->first;
  for (const auto& [e, c] : f.terms()) {
    Integer di = Integer(static_cast<long>(e[0])) - Integer(static_cast<long>(e0[0]));
    Integer dj = Integer(static_cast<long>(e[1])) - Integer(static_cast<long>(e0[1]));
    Integer k = m != 0 ? di / m : dj / n;
    ensure(k * m == di && k * n == dj, "monomial_invariance: support is not on one coset");
    ks.emplace_back(k.get_si(), c);
  }
  long kmin = ks[0].first;
  for (auto& kv : ks) kmin = std::min(kmin, kv.first);
  std::vector<Rational> level;
  for (auto& [k, c] : ks) {
    std::size_t idx = static_cast<std::size_t>(k - kmin);
    if (level.size() <= idx) level.resize(idx + 1);
    level[idx] = c;
  }
  UniPoly lp(level);
  UniPoly sq = squarefree_part(lp);
  if (sq.deg() != 1)
    throw PreconditionError("F meets several level sets x^m y^n = r; it is reducible along the family");
  Rational r = -sq.coeff(0) / sq.lc();
  return MonomialInvariance{m, n, r};
}

// ---------------------------------------------------------------------------
// Exact real intersection counting.

namespace detail {

// Index of the root of W (isolated in `w`) equal to g(theta), where theta is
// the root of the integer polynomial q inside iv.
inline std::size_t locate_value(const UniPoly& q, RootInterval iv, const UniPoly& g, const IsolatingIntervals& w) {
  for (int guard = 0; guard < 4000; ++guard) {
    Interval e = eval_interval(g, iv);
    std::size_t hits = 0, idx = 0;
    for (std::size_t k = 0; k < w.roots.size(); ++k) {
      if (e.lo < w.roots[k].hi && w.roots[k].lo < e.hi) {
        ++hits;
        idx = k;
      }
    }
    if (hits == 1) return idx;
    ensure(hits > 0, "locate_value: value outside every isolating interval");
    refine(q, iv, iv.width() / 2);
  }
  throw InternalError("locate_value: refinement did not converge");
}

// W(v) = Res_t(R(t), v - g(t)): its roots are the values g takes on roots of R.
inline UniPoly value_polynomial(const UniPoly& r, const UniPoly& g) {
  std::size_t n = r.deg();
  std::vector<Rational> xs, ys;
  for (std::size_t k = 0; k <= n; ++k) {
    Rational v = probe_point(k);
    xs.push_back(v);
    ys.push_back(resultant(r, UniPoly::constant(v) - g));
  }
  return interpolate(xs, ys);
}

// Res over the other parameter of (f1(.) - g1(z), f2(.) - g2(z)) as a
// polynomial in z; f1, f2 nonconstant.
inline UniPoly paired_resultant(const UniPoly& f1, const UniPoly& g1, const UniPoly& f2, const UniPoly& g2) {
  std::size_t bound = std::max<std::size_t>(f1.deg() * f2.deg(), 1) * std::max<std::size_t>(
      std::max(g1.is_zero() ? 0 : g1.deg(), g2.is_zero() ? 0 : g2.deg()), 1);
  std::vector<Rational> zs, vals;
  for (std::size_t k = 0; k <= bound; ++k) {
    Rational z = probe_point(k);
    zs.push_back(z);
    vals.push_back(resultant(f1 - UniPoly::constant(g1.eval(z)), f2 - UniPoly::constant(g2.eval(z))));
  }
  return interpolate(zs, vals);
}

}  // namespace detail

// |(C + a) ∩ C| for a NotLine curve C and a nonzero translation a.
//
// A common point is X(t) = X(s) + a. With key polynomials kx = p or p^2 (log
// axis) and their shifted images A, B this reads kx(t) = A(s), ky(t) = B(s).
// Real t are roots of Res_s, real s are roots of Res_t; a pair (t, s) solves
// the system iff kx(t) and A(s) are the same root of one value polynomial,
// and likewise for y. Distinct points are distinct (kx, ky) value pairs.
inline std::size_t translate_intersection_count(const ParamCurve& c, const PlaneVector& a) {
  check_vector(c, a);
  require(!(is_neutral(c.fx, a.x) && is_neutral(c.fy, a.y)), "translation vector must be nonzero");
  require(!line_containment(c).is_line(), "curve lies in a line; intersection counting needs NotLine");
  UniPoly kx = detail::key_poly(c.p, c.fx), ky = detail::key_poly(c.q, c.fy);
  UniPoly A = detail::shifted_key(kx, c.fx, a.x), B = detail::shifted_key(ky, c.fy, a.y);
  UniPoly rt = detail::paired_resultant(A, kx, B, ky);  // in t
  UniPoly rs = detail::paired_resultant(kx, A, ky, B);  // in s
  ensure(!rt.is_zero() && !rs.is_zero(), "translate_intersection_count: C and C + a share a component");
  auto it = isolate_real_roots(rt);
  if (it.roots.empty()) return 0;
  auto is = isolate_real_roots(rs);
  UniPoly qt = positive_primitive(it.squarefree), qs = positive_primitive(is.squarefree);
  auto merged = [](const UniPoly& w1, const UniPoly& w2) { return isolate_real_roots(w1 * w2); };
  auto ux = merged(detail::value_polynomial(it.squarefree, kx), detail::value_polynomial(is.squarefree, A));
  auto uy = merged(detail::value_polynomial(it.squarefree, ky), detail::value_polynomial(is.squarefree, B));

  std::set<std::pair<std::size_t, std::size_t>> s_values;
  for (const auto& iv : is.roots)
    s_values.emplace(detail::locate_value(qs, iv, A, ux), detail::locate_value(qs, iv, B, uy));

  // Parameters where a log coordinate is undefined.
  UniPoly bad = UniPoly::constant(1);
  if (c.fx == Transform::LogAbs) bad = bad * c.p;
  if (c.fy == Transform::LogAbs) bad = bad * c.q;
  UniPoly excluded = gcd(it.squarefree, bad);

  std::set<std::pair<std::size_t, std::size_t>> points;
  for (const auto& iv : it.roots) {
    if (!excluded.is_constant() && sturm_count(excluded, iv.lo, iv.hi) > 0) continue;
    std::pair<std::size_t, std::size_t> key{detail::locate_value(qt, iv, kx, ux), detail::locate_value(qt, iv, ky, uy)};
    if (s_values.count(key)) points.insert(key);
  }
  std::size_t delta = c.delta(), count = points.size();
  ensure(count <= 16 * delta * delta, "translate_intersection_count exceeds 16 delta^2");
  ensure(!c.both_identity() || count <= 4 * delta * delta, "translate_intersection_count exceeds 4 delta^2");
  return count;
}

// Whether the point X (in the curve's plane) lies on C + a.
inline bool on_translate(const ParamCurve& c, const PlaneVector& point, const PlaneVector& a) {
  check_vector(c, point);
  check_vector(c, a);
  // X - a on C: fx(p(s)) = X_x - a_x, i.e. p(s) = X - a, or |p(s)| = X / a.
  auto target = [](const UniPoly& key, Transform t, const Rational& x, const Rational& sh) {
    if (t == Transform::Identity) return key - UniPoly::constant(x - sh);
    Rational v = x / sh;
    return key - UniPoly::constant(v * v);
  };
  UniPoly e1 = target(detail::key_poly(c.p, c.fx), c.fx, point.x, a.x);
  UniPoly e2 = target(detail::key_poly(c.q, c.fy), c.fy, point.y, a.y);
  if (e1.is_zero()) return !e2.is_zero() ? count_real_roots(e2) > 0 : true;
  if (e2.is_zero()) return count_real_roots(e1) > 0;
  UniPoly h = gcd(e1, e2);
  return !h.is_constant() && count_real_roots(h) > 0;
}

struct IntersectionVerdict {
  bool common_factor = false;
  std::size_t count = 0;      // Finite(count)
  MultiPoly factor{2};        // CommonFactor(H)
};

inline IntersectionVerdict implicit_intersection(const MultiPoly& f, const MultiPoly& g) {
  require(f.arity() == 2 && g.arity() == 2, "implicit_intersection needs arity 2");
  require(!f.is_zero() && !g.is_zero(), "implicit_intersection of the zero polynomial");
  MultiPoly h = bivariate_gcd(f, g);
  if (!h.is_constant()) return {true, 0, h};
  std::size_t bound = *f.total_degree() * *g.total_degree();
  if (f.is_constant() || g.is_constant()) return {false, 0, h};
  // Work in the variable with positive degree in both; otherwise one curve is
  // a union of lines parallel to an axis and the other varies only across it.
  std::size_t elim = (f.deg_in(1) > 0 && g.deg_in(1) > 0) ? 1 : 0;
  std::size_t keep = 1 - elim;
  std::size_t count = 0;
  if (f.deg_in(elim) == 0 || g.deg_in(elim) == 0) {
    // f depends only on x_keep (say): its real roots xi, then real roots of g(xi, .).
    const MultiPoly& only = f.deg_in(elim) == 0 ? f : g;
    const MultiPoly& other = f.deg_in(elim) == 0 ? g : f;
    std::size_t var = only.deg_in(0) > 0 ? 0 : 1;
    UniPoly u = only.restrict_to(var, {0, 0});
    auto iso = isolate_real_roots(u);
    for (const auto& iv : iso.roots) {
      RealAlgebraic xi(iso.squarefree, iv);
      auto coeffs = other.coefficients_in(1 - var);
      AlgPoly op;
      for (const auto& cf : coeffs) op.push_back(cf.restrict_to(var, {0, 0}));
      alg_trim(xi, op);
      ensure(!op.empty(), "implicit_intersection: hidden common factor");
      if (op.size() > 1) count += alg_count_real_roots(xi, op);
    }
  } else {
    UniPoly r = bivariate_resultant(f, g, elim);
    ensure(!r.is_zero(), "implicit_intersection: resultant vanishes for coprime input");
    auto iso = isolate_real_roots(r);
    auto fc = f.coefficients_in(elim), gc = g.coefficients_in(elim);
    for (const auto& iv : iso.roots) {
      RealAlgebraic xi(iso.squarefree, iv);
      AlgPoly fa, ga;
      for (const auto& cf : fc) fa.push_back(cf.restrict_to(keep, {0, 0}));
      for (const auto& cf : gc) ga.push_back(cf.restrict_to(keep, {0, 0}));
      AlgPoly hh = alg_gcd(xi, fa, ga);
      ensure(!hh.empty(), "implicit_intersection: hidden common factor");
      if (hh.size() > 1) count += alg_count_real_roots(xi, hh);
    }
  }
  ensure(count <= bound, "implicit_intersection exceeds the Bezout bound");
  return {false, count, h};
}

}  // namespace symexp
