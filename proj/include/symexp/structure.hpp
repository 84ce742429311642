#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "multipoly.hpp"
#include "rational.hpp"
#include "resultant.hpp"
#include "unipoly.hpp"

namespace symexp {

// p = lambda * q.
struct EquivWitnessA {
  Rational lambda;
};

// |p| = |q|^kappa with kappa = r/s in lowest terms.
struct EquivWitnessM {
  Integer r, s;
  Rational kappa() const { return Rational(r, s); }
};

inline std::optional<EquivWitnessA> equiv_a(const UniPoly& p, const UniPoly& q) {
  require(!p.is_zero() && !q.is_zero(), "equiv_a needs nonzero polynomials");
  Rational lambda = p.lc() / q.lc();
  if (p == q * lambda) return EquivWitnessA{lambda};
  return std::nullopt;
}

// The exponent is forced to deg p / deg q. p^{2s} = q^{2r} is tested as
// p^s = +-q^r.
inline std::optional<EquivWitnessM> equiv_m(const UniPoly& p, const UniPoly& q) {
  require(!p.is_constant() && !q.is_constant(), "equiv_m needs nonconstant polynomials");
  Integer num = static_cast<unsigned long>(p.deg()), den = static_cast<unsigned long>(q.deg());
  Integer g = gcd(num, den);
  Integer r = num / g, s = den / g;
  UniPoly ps = p.pow(static_cast<unsigned>(s.get_ui())), qr = q.pow(static_cast<unsigned>(r.get_ui()));
  if (ps == qr || ps == -qr) return EquivWitnessM{r, s};
  return std::nullopt;
}

enum class DecompositionKind { Additive, Multiplicative };

inline std::string kind_name(DecompositionKind k) {
  return k == DecompositionKind::Additive ? "additive" : "multiplicative";
}

// P = outer(inner_1(x1) + ... + inner_d(xd)) or outer(inner_1(x1) * ... * inner_d(xd)).
struct Decomposition {
  DecompositionKind kind = DecompositionKind::Additive;
  UniPoly outer;
  std::vector<UniPoly> inner;
  bool normalized = false;
};

// f(U) for a univariate f and a multivariate U, by Horner.
inline MultiPoly compose_outer(const UniPoly& f, const MultiPoly& u) {
  MultiPoly acc(u.arity());
  const auto& c = f.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * u + MultiPoly::constant(u.arity(), c[k]);
  return acc;
}

inline MultiPoly expand(const Decomposition& dec) {
  std::size_t d = dec.inner.size();
  require(d >= 1, "decomposition without inner parts");
  bool add = dec.kind == DecompositionKind::Additive;
  MultiPoly u = MultiPoly::constant(d, add ? 0 : 1);
  for (std::size_t i = 0; i < d; ++i) {
    MultiPoly ui = MultiPoly::from_uni(dec.inner[i], d, i);
    u = add ? u + ui : u * ui;
  }
  return compose_outer(dec.outer, u);
}

namespace detail {

inline Decomposition normalize_unchecked(const Decomposition& dec) {
  for (const auto& u : dec.inner) require(!u.is_constant(), "decomposition has a constant inner part");
  require(!dec.outer.is_constant(), "decomposition has a constant outer part");
  Decomposition out = dec;
  if (dec.kind == DecompositionKind::Additive) {
    Rational shift = 0;
    for (auto& u : out.inner) {
      shift += u.coeff(0);
      u -= UniPoly::constant(u.coeff(0));
    }
    out.outer = out.outer.shift(shift);
    // u_1 = s * primitive(u_1); every u_i is divided by s and f(z) becomes f(s z).
    Rational s = out.inner[0].lc() / out.inner[0].primitive().lc();
    for (auto& u : out.inner) u = u * s.inverse();
    out.outer = out.outer.scale_arg(s);
  } else {
    Rational s = 1;
    for (auto& u : out.inner) {
      s *= u.lc();
      u = u.monic();
    }
    out.outer = out.outer.scale_arg(s);
  }
  out.normalized = true;
  return out;
}

}  // namespace detail

// Additive: u_i(0) = 0 and u_1 primitive with positive leading coefficient.
// Multiplicative: every u_i monic. The outer polynomial absorbs the change.
inline Decomposition normalize(const Decomposition& dec) {
  Decomposition out = detail::normalize_unchecked(dec);
  ensure(expand(out) == expand(dec), "normalize changed the polynomial");
  return out;
}

namespace detail {

// The digits of h in base g when they are all constants: then h = f(g).
inline std::optional<UniPoly> outer_from_base(UniPoly h, const UniPoly& g) {
  std::vector<Rational> digits;
  while (!h.is_zero()) {
    auto [q, r] = divmod(h, g);
    if (!r.is_constant()) return std::nullopt;
    digits.push_back(r.coeff(0));
    h = std::move(q);
  }
  return UniPoly(std::move(digits));
}

inline std::optional<UniPoly> divide_exactly(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

// One solution of A x = b, or none if inconsistent. Free unknowns are 0.
inline std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rational inv = a[r][c].inverse();
    for (std::size_t k = c; k < cols; ++k) a[r][k] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Rational f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

// Specialization point number k: x_j = s_{k+j}.
inline std::vector<Rational> probe_vector(std::size_t k, std::size_t d) {
  std::vector<Rational> c;
  for (std::size_t j = 0; j < d; ++j) c.push_back(probe_point(k + j));
  return c;
}

// Necessary condition for N/M = g(x_1) h(x_i) (other variables at c): the
// cross-multiplied four-point identity at (a, b), (a', b').
inline bool separates_at(const MultiPoly& n, const MultiPoly& m, std::size_t i, std::vector<Rational> c,
                         const Rational& a, const Rational& b, const Rational& a2, const Rational& b2) {
  auto at = [&](const MultiPoly& f, const Rational& x, const Rational& y) {
    c[0] = x;
    c[i] = y;
    return f.eval(c);
  };
  return at(n, a, b) * at(n, a2, b2) * at(m, a, b2) * at(m, a2, b) ==
         at(n, a, b2) * at(n, a2, b) * at(m, a, b) * at(m, a2, b2);
}

// Necessary condition for D_i / D_1 to be free of x_k:
// d_k(D_i) D_1 = D_i d_k(D_1), tested at the point x.
inline bool ratio_free_of_at(const MultiPoly& di, const MultiPoly& d1, const MultiPoly& di_k, const MultiPoly& d1_k,
                             const std::vector<Rational>& x) {
  return di_k.eval(x) * d1.eval(x) == di.eval(x) * d1_k.eval(x);
}

// Filters shared by both detectors, evaluated at a few sample points.
inline bool ratio_filters_pass(const std::vector<MultiPoly>& der) {
  std::size_t d = der.size();
  for (std::size_t s = 0; s < 3; ++s) {
    auto x = probe_vector(3 * s + 5, d);
    for (std::size_t i = 1; i < d; ++i)
      for (std::size_t k = 1; k < d; ++k)
        if (k != i && !ratio_free_of_at(der[i], der[0], der[i].partial(k), der[0].partial(k), x)) return false;
    for (std::size_t i = 1; i < d; ++i)
      if (!separates_at(der[i], der[0], i, x, probe_point(s + 7), probe_point(s + 4), probe_point(s + 9),
                        probe_point(s + 6)))
        return false;
  }
  return true;
}

inline void check_structured_input(const MultiPoly& p) {
  require(p.arity() >= 2, "structure detection needs d >= 2 variables");
  for (std::size_t i = 0; i < p.arity(); ++i)
    require(p.deg_in(i) >= 1, "P must depend on every variable (x" + std::to_string(i + 1) + " is missing)");
}

}  // namespace detail

// f o g = h with deg g = k, g monic and g(0) = 0. The top coefficients of h
// determine g as an approximate k-th root; f follows from the g-adic digits.
inline std::optional<std::pair<UniPoly, UniPoly>> uni_decompose(const UniPoly& h, std::size_t k) {
  require(k >= 2, "uni_decompose needs k >= 2");
  require(!h.is_zero() && h.deg() % k == 0, "uni_decompose needs k | deg h");
  std::size_t n = h.deg(), r = n / k;
  UniPoly hm = h.monic();
  std::vector<Rational> g(k + 1);
  g[k] = 1;
  for (std::size_t j = 1; j < k; ++j) {
    Rational have = UniPoly(g).pow(static_cast<unsigned>(r)).coeff(n - j);
    g[k - j] = (hm.coeff(n - j) - have) / Rational(static_cast<long>(r));
  }
  UniPoly gp(g);
  auto f = detail::outer_from_base(h, gp);
  if (!f || f->compose(gp) != h) return std::nullopt;
  return std::make_pair(*f, gp);
}

enum class DetectStatus { Found, NotOfForm, SpecializationExhausted };

inline std::string status_name(DetectStatus s) {
  switch (s) {
    case DetectStatus::Found:
      return "found";
    case DetectStatus::NotOfForm:
      return "not_of_form";
    default:
      return "specialization_exhausted";
  }
}

struct Detection {
  DetectStatus status = DetectStatus::NotOfForm;
  std::optional<Decomposition> decomposition;

  bool found() const { return status == DetectStatus::Found; }
  explicit operator bool() const { return found(); }
};

namespace detail {

inline Detection verified(Decomposition dec, const MultiPoly& p) {
  // Cheap rejection at one point before the exact expansion.
  std::vector<Rational> x;
  for (std::size_t i = 0; i < p.arity(); ++i) x.push_back(Rational(2 * static_cast<long>(i) + 3, 7));
  Rational u = dec.kind == DecompositionKind::Additive ? 0 : 1;
  for (std::size_t i = 0; i < x.size(); ++i)
    u = dec.kind == DecompositionKind::Additive ? u + dec.inner[i].eval(x[i]) : u * dec.inner[i].eval(x[i]);
  if (dec.outer.eval(u) != p.eval(x)) return {DetectStatus::NotOfForm, std::nullopt};
  Decomposition n = normalize_unchecked(dec);
  if (expand(n) != p) return {DetectStatus::NotOfForm, std::nullopt};
  return {DetectStatus::Found, std::move(n)};
}

inline std::size_t attempt_budget(const MultiPoly& p) { return 8 * *p.total_degree(); }

}  // namespace detail

// Candidates come from generic specializations; only a decomposition that
// expands back to P exactly is returned.
inline Detection detect_additive(const MultiPoly& p) {
  detail::check_structured_input(p);
  std::size_t d = p.arity();
  std::vector<MultiPoly> der;
  for (std::size_t i = 0; i < d; ++i) der.push_back(p.partial(i));

  // D_i / D_1 must depend on x_1 and x_i only, and split as a product.
  if (!detail::ratio_filters_pass(der)) return {DetectStatus::NotOfForm, std::nullopt};

  for (std::size_t att = 0; att < detail::attempt_budget(p); ++att) {
    auto c = detail::probe_vector(att, d);
    UniPoly d1_x1 = der[0].restrict_to(0, c), d2_x1 = der[1].restrict_to(0, c);
    if (d1_x1.is_zero() || d2_x1.is_zero()) continue;
    std::vector<UniPoly> d1_xi(d), di_xi(d);
    bool degenerate = false;
    for (std::size_t i = 1; i < d; ++i) {
      d1_xi[i] = der[0].restrict_to(i, c);
      di_xi[i] = der[i].restrict_to(i, c);
      degenerate = degenerate || d1_xi[i].is_zero();
    }
    if (degenerate) continue;

    // u_1' ~ D_1 / D_2 along x_1; u_i' = D_i u_1'(c_1) / D_1 along x_i.
    auto u1d = detail::divide_exactly(d1_x1, d2_x1);
    if (!u1d) return {DetectStatus::NotOfForm, std::nullopt};
    std::vector<UniPoly> du{*u1d};
    Rational u1c = u1d->eval(c[0]);
    for (std::size_t i = 1; i < d; ++i) {
      auto q = detail::divide_exactly(di_xi[i] * u1c, d1_xi[i]);
      if (!q || q->is_zero()) return {DetectStatus::NotOfForm, std::nullopt};
      du.push_back(*q);
    }
    MultiPoly u1x = MultiPoly::from_uni(du[0], d, 0);
    for (std::size_t i = 1; i < d; ++i)
      if (der[i] * u1x != MultiPoly::from_uni(du[i], d, i) * der[0]) return {DetectStatus::NotOfForm, std::nullopt};

    Decomposition dec;
    dec.kind = DecompositionKind::Additive;
    for (const auto& v : du) dec.inner.push_back(v.integral());
    Rational rest = 0;
    for (std::size_t i = 1; i < d; ++i) rest += dec.inner[i].eval(c[i]);
    auto f = detail::outer_from_base(p.restrict_to(0, c), dec.inner[0] + UniPoly::constant(rest));
    if (!f || f->is_constant()) return {DetectStatus::NotOfForm, std::nullopt};
    dec.outer = *f;
    return detail::verified(std::move(dec), p);
  }
  return {DetectStatus::SpecializationExhausted, std::nullopt};
}

namespace detail {

// Monic u of degree m with u' Dn = k N u, k = m lc(Dn) / lc(N).
inline std::optional<UniPoly> log_derivative_solve(const UniPoly& n, const UniPoly& dn, std::size_t m) {
  Rational k = Rational(static_cast<long>(m)) * dn.lc() / n.lc();
  auto image = [&](std::size_t l) {
    UniPoly mono = UniPoly::monomial(1, l);
    return mono.derivative() * dn - n * mono * k;
  };
  std::size_t rows = std::max<std::size_t>(m + dn.deg(), m + n.deg()) + 1;
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(m));
  std::vector<Rational> b(rows);
  for (std::size_t l = 0; l < m; ++l) {
    UniPoly col = image(l);
    for (std::size_t r = 0; r < rows; ++r) a[r][l] = col.coeff(r);
  }
  UniPoly top = image(m);
  for (std::size_t r = 0; r < rows; ++r) b[r] = -top.coeff(r);
  auto sol = solve_linear(std::move(a), std::move(b));
  if (!sol) return std::nullopt;
  sol->push_back(1);
  UniPoly u(*sol);
  if (!(u.derivative() * dn - n * u * k).is_zero()) return std::nullopt;
  return u;
}

inline std::vector<std::size_t> divisors_ascending(std::size_t g) {
  std::vector<std::size_t> out;
  for (std::size_t e = 1; e <= g; ++e)
    if (g % e == 0) out.push_back(e);
  return out;
}

}  // namespace detail

// D_i / D_1 = (u_i'/u_i)(x_i) (u_1/u_1')(x_1). The separated factor along x_i
// determines u_i up to its degree, which is enumerated through deg f.
inline Detection detect_multiplicative(const MultiPoly& p) {
  detail::check_structured_input(p);
  std::size_t d = p.arity();
  std::vector<MultiPoly> der;
  for (std::size_t i = 0; i < d; ++i) der.push_back(p.partial(i));

  if (!detail::ratio_filters_pass(der)) return {DetectStatus::NotOfForm, std::nullopt};

  std::size_t g = 0;
  for (std::size_t i = 0; i < d; ++i) g = std::gcd(g, p.deg_in(i));

  for (std::size_t att = 0; att < detail::attempt_budget(p); ++att) {
    auto c = detail::probe_vector(att, d);
    // Ratio numerator / denominator along each x_i, others at c.
    std::vector<std::pair<UniPoly, UniPoly>> ratio(d);
    ratio[0] = {der[0].restrict_to(0, c), der[1].restrict_to(0, c)};
    for (std::size_t i = 1; i < d; ++i) ratio[i] = {der[i].restrict_to(i, c), der[0].restrict_to(i, c)};
    bool degenerate = false;
    for (const auto& [n, m] : ratio) degenerate = degenerate || n.is_zero() || m.is_zero();
    if (degenerate) continue;

    // Lowest terms; u'/u has a simple zero at infinity.
    std::vector<std::pair<UniPoly, UniPoly>> reduced;
    for (const auto& [n, m] : ratio) {
      UniPoly h = gcd(n, m);
      UniPoly rn = exact_div(n, h), rd = exact_div(m, h);
      if (rd.is_constant() || rn.deg() + 1 != rd.deg()) return {DetectStatus::NotOfForm, std::nullopt};
      reduced.emplace_back(rn, rd);
    }

    for (std::size_t e : detail::divisors_ascending(g)) {
      Decomposition dec;
      dec.kind = DecompositionKind::Multiplicative;
      bool ok = true;
      for (std::size_t i = 0; i < d && ok; ++i) {
        auto u = detail::log_derivative_solve(reduced[i].first, reduced[i].second, p.deg_in(i) / e);
        ok = u.has_value();
        if (ok) dec.inner.push_back(*u);
      }
      if (!ok) continue;
      Rational rest = 1;
      for (std::size_t i = 1; i < d; ++i) rest *= dec.inner[i].eval(c[i]);
      if (rest.is_zero()) continue;
      auto f = detail::outer_from_base(p.restrict_to(0, c), dec.inner[0] * rest);
      if (!f || f->is_constant()) continue;
      dec.outer = *f;
      Detection v = detail::verified(std::move(dec), p);
      if (v.found()) return v;
    }
    return {DetectStatus::NotOfForm, std::nullopt};
  }
  return {DetectStatus::SpecializationExhausted, std::nullopt};
}

enum class VerdictKind { Expander, ExceptionalAdditive, ExceptionalMultiplicative };

inline std::string verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Expander:
      return "Expander";
    case VerdictKind::ExceptionalAdditive:
      return "ExceptionalAdditive";
    default:
      return "ExceptionalMultiplicative";
  }
}

// lambda_ij (u_i = lambda u_j) or kappa_ij (|u_i| = |u_j|^kappa).
struct PairWitness {
  std::size_t i, j;
  Rational value;
};

struct ClassifierVerdict {
  VerdictKind kind = VerdictKind::Expander;
  Rational exponent;  // 3/2 - 1/2^{t+1}
  std::optional<Decomposition> decomposition;
  std::vector<std::vector<std::size_t>> classes;  // 0-based indices
  std::vector<std::size_t> index_set;             // I
  std::size_t required = 0;                       // d - floor((t-1)/2)
  std::vector<PairWitness> witnesses;
};

inline Rational expander_exponent(std::size_t t) {
  Rational p = Rational(2).pow(static_cast<unsigned>(t + 1));
  return Rational(3, 2) - p.inverse();
}

namespace detail {

inline std::optional<Rational> inner_relation(DecompositionKind k, const UniPoly& a, const UniPoly& b) {
  if (k == DecompositionKind::Additive) {
    auto w = equiv_a(a, b);
    if (w) return w->lambda;
  } else {
    auto w = equiv_m(a, b);
    if (w) return w->kappa();
  }
  return std::nullopt;
}

// Classes of [d] under the equivalence of inner parts, each sorted, ordered by
// smallest element.
inline std::vector<std::vector<std::size_t>> inner_classes(const Decomposition& dec) {
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < dec.inner.size(); ++i) {
    bool placed = false;
    for (auto& cl : classes) {
      if (inner_relation(dec.kind, dec.inner[i], dec.inner[cl[0]])) {
        cl.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({i});
  }
  return classes;
}

inline void check_classifier_input(const MultiPoly& p, std::size_t t) {
  check_structured_input(p);
  require(t >= 1 && t + 1 <= p.arity(), "t must satisfy 1 <= t <= d-1");
}

// Runs both detectors; at most one may succeed.
inline std::optional<Decomposition> detect_any(const MultiPoly& p) {
  Detection a = detect_additive(p), m = detect_multiplicative(p);
  ensure(!(a.found() && m.found()), "P detected as both additive and multiplicative");
  if (a.found()) return a.decomposition;
  if (m.found()) return m.decomposition;
  return std::nullopt;
}

}  // namespace detail

// Expander unless P has an additive (multiplicative) form whose largest
// class of equivalent inner parts has at least d - floor((t-1)/2) members.
// I is that whole class.
inline ClassifierVerdict classify_single(const MultiPoly& p, std::size_t t) {
  detail::check_classifier_input(p, t);
  std::size_t d = p.arity();
  ClassifierVerdict v;
  v.exponent = expander_exponent(t);
  v.required = d - (t - 1) / 2;
  v.decomposition = detail::detect_any(p);
  if (!v.decomposition) return v;
  const Decomposition& dec = *v.decomposition;
  v.classes = detail::inner_classes(dec);
  const std::vector<std::size_t>* best = &v.classes[0];
  for (const auto& cl : v.classes)
    if (cl.size() > best->size()) best = &cl;
  if (best->size() < v.required) return v;
  v.kind = dec.kind == DecompositionKind::Additive ? VerdictKind::ExceptionalAdditive
                                                     : VerdictKind::ExceptionalMultiplicative;
  v.index_set = *best;
  for (std::size_t a = 0; a < best->size(); ++a)
    for (std::size_t b = 0; b < best->size(); ++b) {
      if (a == b) continue;
      std::size_t i = (*best)[a], j = (*best)[b];
      auto w = detail::inner_relation(dec.kind, dec.inner[i], dec.inner[j]);
      ensure(w.has_value(), "class members lost their witness");
      v.witnesses.push_back({i, j, *w});
    }
  return v;
}

struct PairVerdict {
  VerdictKind kind = VerdictKind::Expander;
  Rational exponent;
  std::optional<Decomposition> p_decomposition, q_decomposition;
  std::vector<std::size_t> mismatch;  // 0-based i with v_i not equivalent to u_i
  std::vector<PairWitness> witnesses;  // (i, i, value): v_i = lambda u_i or |v_i| = |u_i|^kappa
};

inline PairVerdict classify_pair(const MultiPoly& p, const MultiPoly& q, std::size_t t) {
  detail::check_classifier_input(p, t);
  detail::check_classifier_input(q, t);
  require(p.arity() == q.arity(), "classify_pair needs polynomials of the same arity");
  PairVerdict v;
  v.exponent = expander_exponent(t);
  v.p_decomposition = detail::detect_any(p);
  v.q_decomposition = detail::detect_any(q);
  if (!v.p_decomposition || !v.q_decomposition || v.p_decomposition->kind != v.q_decomposition->kind) return v;
  const auto& u = v.p_decomposition->inner;
  const auto& w = v.q_decomposition->inner;
  DecompositionKind kind = v.p_decomposition->kind;
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto rel = detail::inner_relation(kind, w[i], u[i]);
    if (rel)
      v.witnesses.push_back({i, i, *rel});
    else
      v.mismatch.push_back(i);
  }
  if (v.mismatch.size() < t)
    v.kind = kind == DecompositionKind::Additive ? VerdictKind::ExceptionalAdditive
                                                 : VerdictKind::ExceptionalMultiplicative;
  return v;
}

}  // namespace symexp
