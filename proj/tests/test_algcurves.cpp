#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "symexp/curves.hpp"
#include "symexp/parse.hpp"
#include "test_support.hpp"

using namespace symexp;
using testutil::random_multi;
using testutil::random_uni;

namespace {

MultiPoly P(const char* s, std::size_t arity = 2) { return parse_poly(s, arity); }
UniPoly U(const char* s) { return parse_uni(s); }

// Cofactor expansion over polynomial entries.
MultiPoly cofactor_det_poly(const std::vector<std::vector<MultiPoly>>& m, std::size_t arity) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  MultiPoly acc(arity);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<MultiPoly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<MultiPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    MultiPoly t = m[0][j] * cofactor_det_poly(minor, arity);
    acc += (j % 2 == 0) ? t : -t;
  }
  return acc;
}

MultiPoly sylvester_by_cofactors(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
  auto fc = f.coefficients_in(var), gc = g.coefficients_in(var);
  std::size_t m = fc.size() - 1, n = gc.size() - 1, d = f.arity();
  std::vector<std::vector<MultiPoly>> s(m + n, std::vector<MultiPoly>(m + n, MultiPoly(d)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = fc[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = gc[n - k];
  return cofactor_det_poly(s, d);
}

bool equal_up_to_sign(const MultiPoly& a, const MultiPoly& b) { return a == b || a == -b; }

ParamCurve curve(const char* p, const char* q, Transform fx = Transform::Identity,
                 Transform fy = Transform::Identity) {
  return ParamCurve(U(p), U(q), fx, fy);
}

}  // namespace

TEST(SylvesterResultant, Examples) {
  // variables x, y, t
  MultiPoly r = sylvester_resultant(parse_poly_arity("x-z", 3), parse_poly_arity("y-z", 3), 2);
  EXPECT_TRUE(equal_up_to_sign(r, parse_poly_arity("x-y", 3)));
  MultiPoly cusp = sylvester_resultant(parse_poly_arity("x-z^2", 3), parse_poly_arity("y-z^3", 3), 2);
  EXPECT_TRUE(equal_up_to_sign(cusp, parse_poly_arity("y^2-x^3", 3)));
  EXPECT_EQ(cusp, sylvester_by_cofactors(parse_poly_arity("x-z^2", 3), parse_poly_arity("y-z^3", 3), 2));
  EXPECT_THROW(sylvester_resultant(parse_poly_arity("x", 3), parse_poly_arity("y-z", 3), 2), PreconditionError);
}

TEST(SylvesterResultant, AgainstLinearFactorIsEvaluation) {
  std::mt19937_64 g(31);
  for (int it = 0; it < 30; ++it) {
    // f in Q[x, t]; Res_t(f, t - a) = f(x, a)
    MultiPoly f = random_multi(g, 2, 4, 5);
    if (f.deg_in(1) == 0) continue;
    Rational a = testutil::small_rational(g);
    MultiPoly lin = MultiPoly::variable(2, 1) - MultiPoly::constant(2, a);
    MultiPoly r = sylvester_resultant(f, lin, 1);
    EXPECT_TRUE(equal_up_to_sign(r, f.substitute(1, a)));
  }
}

TEST(SylvesterResultant, BareissMatchesCofactors) {
  std::mt19937_64 g(32);
  for (int it = 0; it < 25; ++it) {
    MultiPoly f = random_multi(g, 3, 3, 4), h = random_multi(g, 3, 3, 4);
    if (f.deg_in(2) == 0 || h.deg_in(2) == 0) continue;
    EXPECT_EQ(sylvester_resultant(f, h, 2), sylvester_by_cofactors(f, h, 2));
  }
}

TEST(BivariateResultant, MatchesSymbolic) {
  std::mt19937_64 g(33);
  for (int it = 0; it < 30; ++it) {
    MultiPoly f = random_multi(g, 2, 4, 5), h = random_multi(g, 2, 4, 5);
    if (f.deg_in(1) == 0 || h.deg_in(1) == 0) continue;
    MultiPoly sym = sylvester_resultant(f, h, 1);
    UniPoly ev = bivariate_resultant(f, h, 1);
    EXPECT_EQ(MultiPoly::from_uni(ev, 2, 0), sym);
  }
}

TEST(Implicitize, Examples) {
  EXPECT_TRUE(equal_up_to_sign(implicitize(U("t"), U("t^2")).F, P("y-x^2")));
  EXPECT_EQ(implicitize(U("t"), U("t^2")).F, P("y-x^2"));
  EXPECT_TRUE(equal_up_to_sign(implicitize(U("t^2"), U("t^3")).F, P("y^2-x^3")));
  EXPECT_EQ(implicitize(U("t"), U("t")).F, P("x-y"));
  EXPECT_EQ(implicitize(U("t"), U("t")).degree_bound, 2u);
  EXPECT_THROW(implicitize(U("1"), U("2")), PreconditionError);
}

TEST(Implicitize, SoundnessOnRandomCurves) {
  std::mt19937_64 g(34);
  for (int it = 0; it < 200; ++it) {
    std::size_t dp = 1 + it % 5, dq = 1 + (it / 5) % 5;
    UniPoly p = random_uni(g, dp, 4), q = random_uni(g, dq, 4);
    ImplicitCurve c = implicitize(p, q);
    EXPECT_TRUE(substitute_curve(c.F, p, q).is_zero());
    EXPECT_LE(*c.F.total_degree(), 2 * std::max(dp, dq));
    EXPECT_LE(*c.F.total_degree(), c.degree_bound);
  }
}

TEST(Implicitize, SquarefreeForNonInjectiveParametrisation) {
  // (t^2, t^4) traces y = x^2 twice; the resultant is (y - x^2)^2.
  EXPECT_TRUE(equal_up_to_sign(implicitize(U("t^2"), U("t^4")).F, P("y-x^2")));
}

TEST(AffineAssociate, Examples) {
  EXPECT_EQ(affine_associate(P("x-y"), Translation{1, 1}), std::optional<Rational>(1));
  EXPECT_EQ(affine_associate(P("y-x^2"), Translation{0, 1}), std::nullopt);
  EXPECT_EQ(affine_associate(P("x*y-1"), DiagonalScaling{2, Rational(1, 2)}), std::optional<Rational>(1));
  EXPECT_THROW(affine_associate(P("x"), Translation{0, 0}), PreconditionError);
  // F(x + l, lambda y) for y - e^x-like polynomial families: y*x^0 is skew invariant with c = lambda.
  EXPECT_EQ(affine_associate(P("y"), Skew{3, 5}), std::optional<Rational>(5));
}

TEST(AffineAssociate, LinesAreTranslationInvariantAlongDirection) {
  std::mt19937_64 g(35);
  for (int it = 0; it < 100; ++it) {
    Rational a = testutil::small_rational(g), b = testutil::small_rational(g), c = testutil::small_rational(g);
    if (a.is_zero() && b.is_zero()) continue;
    MultiPoly f = MultiPoly::variable(2, 0) * a + MultiPoly::variable(2, 1) * b - MultiPoly::constant(2, c);
    Rational k = testutil::nonzero_rational(g);
    auto res = affine_associate(f, Translation{b * k, -a * k});
    ASSERT_TRUE(res.has_value());
    EXPECT_EQ(*res, Rational(1));
  }
}

TEST(AffineAssociate, NonLinesAreNeverTranslationInvariant) {
  std::mt19937_64 g(36);
  std::vector<ImplicitCurve> corpus;
  for (int it = 0; it < 12; ++it) {
    std::size_t dp = 1 + it % 3, dq = 2 + it % 2;
    UniPoly p = random_uni(g, dp, 3), q = random_uni(g, dq, 3);
    if (line_containment(ParamCurve(p, q)).is_line()) continue;
    corpus.push_back(implicitize(p, q));
  }
  ASSERT_GE(corpus.size(), 8u);
  for (const auto& c : corpus)
    for (int k = 0; k < 100; ++k) {
      Rational a = testutil::small_rational(g, 4, 3), b = testutil::small_rational(g, 4, 3);
      if (a.is_zero() && b.is_zero()) continue;
      EXPECT_FALSE(affine_associate(c.F, Translation{a, b}).has_value());
    }
}

TEST(MonomialInvariance, Examples) {
  auto hyper = monomial_invariance(P("x*y-1"), 2, Rational(1, 2));
  ASSERT_TRUE(hyper.has_value());
  EXPECT_EQ(hyper->m, 1);
  EXPECT_EQ(hyper->n, 1);
  EXPECT_EQ(hyper->r, Rational(1));
  // F(3x, y/9) = 9 x^2 y / 9 - 3 = F: associate constant 1, support {(2,1),(0,0)}.
  EXPECT_EQ(affine_associate(P("x^2*y-3"), DiagonalScaling{3, Rational(1, 9)}), std::optional<Rational>(1));
  auto cubic = monomial_invariance(P("x^2*y-3"), 3, Rational(1, 9));
  ASSERT_TRUE(cubic.has_value());
  EXPECT_EQ(cubic->m, 2);
  EXPECT_EQ(cubic->n, 1);
  EXPECT_EQ(cubic->r, Rational(3));
  EXPECT_FALSE(monomial_invariance(P("x+y"), 2, 3).has_value());
}

TEST(MonomialInvariance, RejectsFiniteOrderAndBadInput) {
  EXPECT_THROW(monomial_invariance(P("x*y-1"), -1, 1), PreconditionError);
  EXPECT_THROW(monomial_invariance(P("x*y"), 2, Rational(1, 2)), PreconditionError);
  EXPECT_THROW(monomial_invariance(P("3"), 2, 3), PreconditionError);
}

TEST(MonomialInvariance, SignParityDoublesGenerator) {
  // alpha = -2, beta = -1/2: (1,1) gives alpha*beta = 1, fine; (-2, 2): (1, 0) kernel needs even.
  auto r = monomial_invariance(P("x^2-4"), -1, 3);
  // (alpha, beta) = (-1, 3): integer kernel (1, 0), sign forces (2, 0).
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->m, 2);
  EXPECT_EQ(r->n, 0);
  EXPECT_EQ(r->r, Rational(4));
}

TEST(MonomialInvariance, ConsistencyOnConstructedFamilies) {
  std::mt19937_64 g(37);
  for (int it = 0; it < 40; ++it) {
    long m = testutil::uniform(g, 1, 3), n = testutil::uniform(g, -3, 3);
    if (n == 0 || std::gcd(m, std::labs(n)) != 1) continue;
    Rational r = testutil::nonzero_rational(g, 5, 2);
    unsigned k = static_cast<unsigned>(testutil::uniform(g, 1, 2));
    // (x^m y^n - r)^k with the negative power cleared.
    MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
    MultiPoly base = n > 0 ? x.pow(static_cast<unsigned>(m)) * y.pow(static_cast<unsigned>(n)) - MultiPoly::constant(2, r)
                           : x.pow(static_cast<unsigned>(m)) - y.pow(static_cast<unsigned>(-n)) * r;
    MultiPoly f = base.pow(k);
    Rational s = 2;
    Rational alpha = n > 0 ? s.pow(static_cast<unsigned>(n)) : s.inverse().pow(static_cast<unsigned>(-n));
    Rational beta = s.inverse().pow(static_cast<unsigned>(m));
    auto inv = monomial_invariance(f, alpha, beta);
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(inv->m, m);
    EXPECT_EQ(inv->n, n);
    EXPECT_EQ(inv->r, r);
    // support on one coset
    const Exponent& e0 = f.terms().begin()->first;
    for (const auto& [e, c] : f.terms()) {
      long di = static_cast<long>(e[0]) - static_cast<long>(e0[0]);
      long dj = static_cast<long>(e[1]) - static_cast<long>(e0[1]);
      EXPECT_EQ(di * n, dj * m);
    }
    // sampled points of x^m y^n = r with |n| = 1 solved for y
    if (std::labs(n) == 1)
      for (int xv = 1; xv <= 3; ++xv) {
        Rational xr(xv);
        Rational yr = n == 1 ? r / xr.pow(static_cast<unsigned>(m)) : xr.pow(static_cast<unsigned>(m)) / r;
        EXPECT_TRUE(f.eval({xr, yr}).is_zero());
      }
  }
}

TEST(LineContainment, Examples) {
  auto l1 = line_containment(curve("t", "3*t+1"));
  ASSERT_TRUE(l1.is_line());
  EXPECT_EQ(l1.line->alpha, Rational(3));
  EXPECT_EQ(l1.line->beta, Rational(-1));
  EXPECT_EQ(l1.line->gamma.str(), "-1");
  auto l2 = line_containment(curve("t^2", "t^3", Transform::LogAbs, Transform::LogAbs));
  ASSERT_TRUE(l2.is_line());
  EXPECT_EQ(l2.line->alpha, Rational(3));
  EXPECT_EQ(l2.line->beta, Rational(-2));
  EXPECT_EQ(l2.line->gamma.str(), "0");
  EXPECT_FALSE(line_containment(curve("t+1", "t^2", Transform::Identity, Transform::LogAbs)).is_line());
}

TEST(LineContainment, Cases) {
  EXPECT_FALSE(line_containment(curve("t", "t^2")).is_line());
  EXPECT_TRUE(line_containment(curve("5", "t^2")).is_line());
  EXPECT_TRUE(line_containment(curve("t^2+1", "3", Transform::Identity, Transform::LogAbs)).is_line());
  // |2 t^2| = 2 |t|^2: log|p| - 2 log|q| = log 2
  auto l = line_containment(curve("2*t^2", "t", Transform::LogAbs, Transform::LogAbs));
  ASSERT_TRUE(l.is_line());
  EXPECT_EQ(l.line->alpha, Rational(1));
  EXPECT_EQ(l.line->beta, Rational(-2));
  EXPECT_EQ(l.line->gamma.str(), "log(2)");
  EXPECT_FALSE(line_containment(curve("t+1", "t", Transform::LogAbs, Transform::LogAbs)).is_line());
  EXPECT_TRUE(line_containment(curve("(t+1)^2", "-t-1", Transform::LogAbs, Transform::LogAbs)).is_line());
}

TEST(LineContainment, IdentityCaseAgainstRankOracle) {
  std::mt19937_64 g(38);
  for (int it = 0; it < 200; ++it) {
    UniPoly p = random_uni(g, 1 + it % 3, 2);
    UniPoly q = it % 2 ? p * testutil::nonzero_rational(g) + UniPoly::constant(testutil::small_rational(g))
                       : random_uni(g, 1 + it % 3, 2);
    // rank of the coefficient rows {1, p, q}
    std::size_t n = std::max(p.deg(), q.deg()) + 1;
    std::vector<std::vector<Rational>> rows{std::vector<Rational>(n), {}, {}};
    rows[0][0] = 1;
    for (std::size_t k = 0; k < n; ++k) {
      rows[1].push_back(p.coeff(k));
      rows[2].push_back(q.coeff(k));
    }
    // dependent iff every 3x3 minor vanishes
    bool dependent = true;
    for (std::size_t a = 0; a < n && dependent; ++a)
      for (std::size_t b = a + 1; b < n && dependent; ++b)
        for (std::size_t c = b + 1; c < n && dependent; ++c) {
          std::vector<std::vector<Rational>> m;
          for (auto& r : rows) m.push_back({r[a], r[b], r[c]});
          if (!testutil::cofactor_det(m).is_zero()) dependent = false;
        }
    if (n < 3) dependent = true;
    EXPECT_EQ(line_containment(ParamCurve(p, q)).is_line(), dependent);
  }
}

TEST(TranslateIntersection, Examples) {
  EXPECT_EQ(translate_intersection_count(curve("t", "t^2"), {1, 0}), 1u);
  EXPECT_EQ(translate_intersection_count(curve("t", "t^2"), {0, 1}), 0u);
  EXPECT_EQ(translate_intersection_count(curve("t", "t^3"), {1, 1}), 2u);
  EXPECT_THROW(translate_intersection_count(curve("t", "3*t+1"), {1, 0}), PreconditionError);
  EXPECT_THROW(translate_intersection_count(curve("t", "t^2"), {0, 0}), PreconditionError);
  EXPECT_THROW(translate_intersection_count(curve("t", "t^2", Transform::LogAbs), {0, 1}), PreconditionError);
}

TEST(TranslateIntersection, GraphCurvesAgainstUnivariateOracle) {
  // C = (t, q(t)): points of (C+a) ∩ C are in bijection with real s solving
  // q(s + a) = q(s) + b.
  std::mt19937_64 g(39);
  for (int it = 0; it < 60; ++it) {
    UniPoly q = random_uni(g, 2 + it % 3, 4);
    Rational a = testutil::small_rational(g), b = testutil::small_rational(g);
    if (a.is_zero() && b.is_zero()) continue;
    UniPoly eq = q.shift(a) - q - UniPoly::constant(b);
    std::size_t want = eq.is_zero() ? 999 : (eq.is_constant() ? 0 : count_real_roots(eq));
    EXPECT_EQ(translate_intersection_count(ParamCurve(U("t"), q), {a, b}), want);
  }
}

TEST(TranslateIntersection, MixedGraphAgainstSignSplitOracle) {
  // C = (t, log|q(t)|), shift (a, log rho): t = s + a and |q(s + a)| = rho |q(s)|,
  // split into q(s + a) = ±rho q(s), discarding zeros of q(s).
  std::mt19937_64 g(40);
  for (int it = 0; it < 40; ++it) {
    UniPoly q = random_uni(g, 1 + it % 3, 4);
    Rational a = testutil::small_rational(g), rho = testutil::nonzero_rational(g).abs();
    if (a.is_zero() && rho.is_one()) continue;
    UniPoly hp = q.shift(a) - q * rho, hm = q.shift(a) + q * rho;
    if (hp.is_zero() || hm.is_zero()) continue;
    UniPoly prod = hp * hm;
    std::size_t want = prod.is_constant() ? 0 : count_real_roots(prod);
    if (!prod.is_constant()) {
      UniPoly bad = gcd(squarefree_part(prod), q);
      if (!bad.is_constant()) want -= count_real_roots(bad);
    }
    ParamCurve c(U("t"), q, Transform::Identity, Transform::LogAbs);
    EXPECT_EQ(translate_intersection_count(c, {a, rho}), want);
  }
}

TEST(TranslateIntersection, LogLogAgainstNumericOracle) {
  // C = (log|t|, log|q(t)|), shift (log r, log rho): t = ±r s and
  // q(±r s) = ±rho q(s); points (|t|, |q(t)|) deduplicated numerically.
  std::mt19937_64 g(41);
  int checked = 0;
  for (int it = 0; it < 40; ++it) {
    UniPoly q = random_uni(g, 2 + it % 2, 3);
    if (q.coeff(0).is_zero()) continue;
    Rational r = Rational(testutil::uniform(g, 1, 4), testutil::uniform(g, 1, 3));
    Rational rho = Rational(testutil::uniform(g, 1, 4), testutil::uniform(g, 1, 3));
    if (r.is_one() && rho.is_one()) continue;
    ParamCurve c(U("t"), q, Transform::LogAbs, Transform::LogAbs);
    if (line_containment(c).is_line()) continue;
    std::vector<std::pair<double, double>> pts;
    for (int e1 : {1, -1})
      for (int e2 : {1, -1}) {
        UniPoly h = q.scale_arg(r * Rational(e1)) - q * (rho * Rational(e2));
        if (h.is_zero() || h.is_constant()) continue;
        auto iso = isolate_real_roots(h);
        for (auto iv : iso.roots) {
          refine(iso.squarefree, iv, Rational(1, 1000000000));
          Rational s = iv.exact ? *iv.exact : (iv.lo + iv.hi) / 2;
          if (iv.exact && (s.is_zero() || q.eval(s).is_zero())) continue;
          if (!iv.exact && (sturm_count(UniPoly::x() * q, iv.lo, iv.hi) > 0)) continue;
          double t = (r * Rational(e1) * s).to_double();
          pts.emplace_back(std::fabs(t), std::fabs(q.eval(r * Rational(e1) * s).to_double()));
        }
      }
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      bool seen = false;
      for (std::size_t j = 0; j < i; ++j)
        seen |= std::fabs(pts[i].first - pts[j].first) < 1e-7 && std::fabs(pts[i].second - pts[j].second) < 1e-7;
      if (!seen) ++distinct;
    }
    EXPECT_EQ(translate_intersection_count(c, {r, rho}), distinct) << q.str() << " r=" << r << " rho=" << rho;
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

TEST(TranslateIntersection, BoundHoldsOnMixedCorpus) {
  std::mt19937_64 g(42);
  for (int it = 0; it < 30; ++it) {
    Transform fx = it % 3 == 0 ? Transform::Identity : Transform::LogAbs;
    Transform fy = it % 3 == 1 ? Transform::Identity : Transform::LogAbs;
    ParamCurve c(random_uni(g, 1 + it % 2, 3), random_uni(g, 2, 3), fx, fy);
    if (line_containment(c).is_line()) continue;
    for (int k = 0; k < 5; ++k) {
      Rational ax = fx == Transform::Identity ? testutil::small_rational(g) : Rational(testutil::uniform(g, 1, 3), 2);
      Rational ay = fy == Transform::Identity ? testutil::small_rational(g) : Rational(testutil::uniform(g, 1, 3), 2);
      if (is_neutral(fx, ax) && is_neutral(fy, ay)) continue;
      std::size_t d = c.delta();
      EXPECT_LE(translate_intersection_count(c, {ax, ay}), 16 * d * d);
    }
  }
}

TEST(ImplicitIntersection, Examples) {
  auto a = implicit_intersection(P("y-x^2"), P("y-x"));
  EXPECT_FALSE(a.common_factor);
  EXPECT_EQ(a.count, 2u);
  auto b = implicit_intersection(P("(x-y)*(x+y)"), P("x-y"));
  EXPECT_TRUE(b.common_factor);
  EXPECT_EQ(b.factor, P("x-y"));
  auto c = implicit_intersection(P("x^2+y^2-1"), P("x^2+y^2-4"));
  EXPECT_FALSE(c.common_factor);
  EXPECT_EQ(c.count, 0u);
  EXPECT_THROW(implicit_intersection(MultiPoly(2), P("x")), PreconditionError);
}

TEST(ImplicitIntersection, AxisParallelAndSharedX) {
  EXPECT_EQ(implicit_intersection(P("x-1"), P("y-2")).count, 1u);
  EXPECT_EQ(implicit_intersection(P("x^2+y^2-2"), P("x-y")).count, 2u);
  // two points sharing an x-coordinate
  EXPECT_EQ(implicit_intersection(P("y^2-1"), P("x^2+y^2-2")).count, 4u);
  EXPECT_EQ(implicit_intersection(P("x^2-1"), P("x-3")).count, 0u);
}

TEST(ImplicitIntersection, GridOracle) {
  // Products of linear factors with rational intersection points.
  std::mt19937_64 g(43);
  for (int it = 0; it < 30; ++it) {
    std::vector<Rational> xs, ys;
    MultiPoly f = MultiPoly::constant(2, 1), h = MultiPoly::constant(2, 1);
    std::size_t nx = 1 + it % 3, ny = 1 + (it / 3) % 3;
    while (xs.size() < nx) {
      Rational v = testutil::small_rational(g);
      if (std::find(xs.begin(), xs.end(), v) == xs.end()) xs.push_back(v);
    }
    while (ys.size() < ny) {
      Rational v = testutil::small_rational(g);
      if (std::find(ys.begin(), ys.end(), v) == ys.end()) ys.push_back(v);
    }
    for (auto& v : xs) f = f * (MultiPoly::variable(2, 0) - MultiPoly::constant(2, v));
    for (auto& v : ys) h = h * (MultiPoly::variable(2, 1) - MultiPoly::constant(2, v));
    // tilt to make both genuinely bivariate
    MultiPoly f2 = f.compose({MultiPoly::variable(2, 0) + MultiPoly::variable(2, 1), MultiPoly::variable(2, 1)});
    MultiPoly h2 = h.compose({MultiPoly::variable(2, 0) + MultiPoly::variable(2, 1), MultiPoly::variable(2, 1)});
    EXPECT_EQ(implicit_intersection(f, h).count, nx * ny);
    EXPECT_EQ(implicit_intersection(f2, h2).count, nx * ny);
  }
}

TEST(ImplicitIntersection, BezoutOnRandomPairs) {
  std::mt19937_64 g(44);
  int finite = 0, planted = 0;
  for (int it = 0; it < 60; ++it) {
    MultiPoly f = random_multi(g, 2, 1 + it % 4, 5, 3), h = random_multi(g, 2, 1 + (it / 4) % 4, 5, 3);
    if (f.is_constant() || h.is_constant()) continue;
    auto v = implicit_intersection(f, h);
    if (!v.common_factor) {
      EXPECT_LE(v.count, *f.total_degree() * *h.total_degree());
      ++finite;
    }
    MultiPoly k = random_multi(g, 2, 2, 3, 3);
    if (k.is_constant()) continue;
    EXPECT_TRUE(implicit_intersection(f * k, h * k).common_factor);
    ++planted;
  }
  EXPECT_GT(finite, 30);
  EXPECT_GT(planted, 30);
}

TEST(OnTranslate, Membership) {
  ParamCurve c = curve("t", "t^2");
  EXPECT_TRUE(on_translate(c, {2, 4}, {0, 0}));
  EXPECT_TRUE(on_translate(c, {3, 5}, {1, 1}));
  EXPECT_FALSE(on_translate(c, {3, 6}, {1, 1}));
  ParamCurve l = curve("t", "t^2", Transform::LogAbs, Transform::LogAbs);
  // (log 2, log 4) is on C; scaled by (3, 5) gives (log 6, log 20)
  EXPECT_TRUE(on_translate(l, {6, 20}, {3, 5}));
  EXPECT_FALSE(on_translate(l, {6, 21}, {3, 5}));
}
