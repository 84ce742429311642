#include <gtest/gtest.h>

#include <random>

#include "symexp/bivariate.hpp"
#include "symexp/io.hpp"
#include "symexp/parse.hpp"
#include "symexp/realroots.hpp"
#include "test_support.hpp"

using namespace symexp;
using testutil::random_multi;
using testutil::random_uni;

namespace {

MultiPoly P(const char* s, std::size_t arity = 2) { return parse_poly(s, arity); }
UniPoly U(const char* s) { return parse_uni(s); }

long binom(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Rational, LowestTermsAndParsing) {
  Rational r(Integer(6), Integer(-4));
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rational::parse("-6/4"), r);
  EXPECT_EQ(Rational::parse("7").str(), "7");
  EXPECT_THROW(Rational::parse("1/0"), PreconditionError);
  EXPECT_THROW(Rational::parse("a"), PreconditionError);
  EXPECT_EQ((Rational(1) / Rational(3) + Rational(1) / Rational(6)).str(), "1/2");
}

TEST(UniPoly, ZeroHasNoDegree) {
  UniPoly z;
  EXPECT_FALSE(z.degree().has_value());
  EXPECT_THROW(z.deg(), PreconditionError);
  EXPECT_EQ(UniPoly({1, 0, 0}).degree(), std::optional<std::size_t>(0));
}

TEST(PartialDerivative, PowerRule) {
  EXPECT_EQ(P("x1*x2^2").partial(1), P("2*x1*x2"));
  EXPECT_EQ(P("x1+5", 1).partial(0), P("1", 1));
  EXPECT_THROW(P("x1").partial(3), PreconditionError);
}

TEST(PartialDerivative, CubeOfSumAgainstBinomialExpansion) {
  // 3 (x1+x2)^2 written term by term with binomial coefficients.
  MultiPoly::TermMap want;
  for (std::uint32_t k = 0; k <= 2; ++k) want[{2 - k, k}] = Rational(3 * binom(2, k));
  EXPECT_EQ(P("(x1+x2)^3").partial(0), MultiPoly(2, want));
}

TEST(PartialDerivative, DegreeDropsByOne) {
  std::mt19937_64 g(11);
  for (int it = 0; it < 100; ++it) {
    MultiPoly p = random_multi(g, 3, 5, 6);
    for (std::size_t i = 0; i < 3; ++i) {
      MultiPoly d = p.partial(i);
      if (!d.is_zero()) {
        EXPECT_EQ(d.deg_in(i) + 1, p.deg_in(i));
      }
    }
  }
}

TEST(PartialDerivative, Linear) {
  std::mt19937_64 g(12);
  for (int it = 0; it < 100; ++it) {
    MultiPoly p = random_multi(g, 3, 4, 5), q = random_multi(g, 3, 4, 5);
    Rational a = testutil::small_rational(g), b = testutil::small_rational(g);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ((a * p + b * q).partial(i), a * p.partial(i) + b * q.partial(i));
  }
}

TEST(RingLaws, UniAndMulti) {
  std::mt19937_64 g(13);
  for (int it = 0; it < 100; ++it) {
    UniPoly a = random_uni(g, 4), b = random_uni(g, 3), c = random_uni(g, 5);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    MultiPoly x = random_multi(g, 3, 3, 4), y = random_multi(g, 3, 3, 4), z = random_multi(g, 3, 3, 4);
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ((x * y) * z, x * (y * z));
  }
}

TEST(RingLaws, MultiplyMatchesEvaluation) {
  std::mt19937_64 g(14);
  for (int it = 0; it < 50; ++it) {
    MultiPoly x = random_multi(g, 4, 6, 8), y = random_multi(g, 4, 6, 8);
    std::vector<Rational> pt;
    for (int i = 0; i < 4; ++i) pt.push_back(testutil::small_rational(g));
    EXPECT_EQ((x * y).eval(pt), x.eval(pt) * y.eval(pt));
  }
}

TEST(UniGcd, Examples) {
  EXPECT_EQ(gcd(U("x^2-1"), U("x-1")), U("x-1"));
  EXPECT_EQ(gcd(U("x^2+1"), U("x+1")), U("1"));
  EXPECT_EQ(gcd(U("(x-2)^2*(x+3)"), U("(x-2)*(x-5)")), U("x-2"));
  EXPECT_THROW(gcd(UniPoly(), UniPoly()), PreconditionError);
}

TEST(UniGcd, DividesAndScales) {
  std::mt19937_64 g(15);
  for (int it = 0; it < 200; ++it) {
    UniPoly a = random_uni(g, 1 + it % 5), b = random_uni(g, 1 + it % 4), c = random_uni(g, 1 + it % 3);
    UniPoly d = gcd(a, b);
    EXPECT_TRUE((a % d).is_zero());
    EXPECT_TRUE((b % d).is_zero());
    EXPECT_EQ(gcd(a * c, b * c), (d * c).monic());
  }
}

TEST(BivariateGcd, Examples) {
  EXPECT_EQ(bivariate_gcd(P("(x-y)*(x+y)"), P("x-y")), P("x-y"));
  EXPECT_EQ(bivariate_gcd(P("y-x^2"), P("y-x")), P("1"));
  EXPECT_EQ(bivariate_gcd(P("x^2*y+x*y^2"), P("x*y")), P("x*y"));
  EXPECT_THROW(bivariate_gcd(MultiPoly(2), MultiPoly(2)), PreconditionError);
}

TEST(BivariateGcd, CoprimeWitnessByResultant) {
  // Res_y(y - x^2, y - x) by cofactor expansion of the 2x2 Sylvester matrix at
  // a few x values: nonzero somewhere means no common factor.
  MultiPoly f = P("y-x^2"), h = P("y-x");
  bool nonzero = false;
  for (int x = -2; x <= 2; ++x) {
    UniPoly fy = f.restrict_to(1, {Rational(x), 0}), hy = h.restrict_to(1, {Rational(x), 0});
    std::vector<std::vector<Rational>> s{{fy.coeff(1), fy.coeff(0)}, {hy.coeff(1), hy.coeff(0)}};
    EXPECT_EQ(testutil::cofactor_det(s), Rational(x * x - x));
    nonzero |= !testutil::cofactor_det(s).is_zero();
  }
  EXPECT_TRUE(nonzero);
}

TEST(BivariateGcd, PlantedFactorRecovered) {
  std::mt19937_64 g(16);
  for (int it = 0; it < 60; ++it) {
    MultiPoly h = random_multi(g, 2, 2, 3), a = random_multi(g, 2, 3, 4), b = random_multi(g, 2, 3, 4);
    if (h.is_constant() || a.is_zero() || b.is_zero()) continue;
    MultiPoly d = bivariate_gcd(h * a, h * b);
    EXPECT_TRUE(exact_div(h * a, d) * d == h * a);
    EXPECT_TRUE(exact_div(h * b, d) * d == h * b);
    // h divides the gcd.
    EXPECT_NO_THROW(exact_div(d, h));
  }
}

TEST(Sturm, Examples) {
  EXPECT_EQ(sturm_count(U("x^2-2"), Rational(-2), Rational(2)), 2u);
  EXPECT_EQ(count_real_roots(U("x^2+1")), 0u);
  EXPECT_EQ(sturm_count(U("x^3-x"), Rational(-2), Rational(1, 2)), 2u);
  EXPECT_THROW(count_real_roots(UniPoly()), PreconditionError);
  EXPECT_THROW(sturm_count(U("x"), Rational(1), Rational(1)), PreconditionError);
}

TEST(Sturm, HalfOpenInterval) {
  // roots -1, 0, 1: (-1, 1] holds 0 and 1.
  EXPECT_EQ(sturm_count(U("x^3-x"), Rational(-1), Rational(1)), 2u);
}

TEST(Isolation, Examples) {
  auto r = isolate_real_roots(U("x^2-2"));
  ASSERT_EQ(r.size(), 2u);
  auto neg = r.roots[0], pos = r.roots[1];
  refine(r.squarefree, neg, Rational(1, 2));
  refine(r.squarefree, pos, Rational(1, 2));
  EXPECT_GE(neg.lo, Rational(-2));
  EXPECT_LE(neg.hi, Rational(-1));
  EXPECT_GE(pos.lo, Rational(1));
  EXPECT_LE(pos.hi, Rational(2));
  auto s = isolate_real_roots(U("x-3"));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.roots[0].exact, std::optional<Rational>(3));
  auto m = isolate_real_roots(U("(x-1)^2*(x+4)"));
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.squarefree, U("(x-1)*(x+4)"));
}

TEST(Isolation, PlantedRootsAndSturmAgreement) {
  std::mt19937_64 g(17);
  for (int it = 0; it < 500; ++it) {
    // Distinct rational roots times an irreducible quadratic power.
    std::size_t k = static_cast<std::size_t>(testutil::uniform(g, 0, 5));
    std::vector<Rational> roots;
    while (roots.size() < k) {
      Rational r = testutil::small_rational(g, 6, 4);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    UniPoly p = UniPoly::constant(testutil::nonzero_rational(g));
    for (const auto& r : roots) p = p * UniPoly::linear_root(r).pow(1 + static_cast<unsigned>(testutil::uniform(g, 0, 1)));
    std::size_t deg_left = 8 - p.deg();
    if (deg_left >= 2 && it % 2) p = p * U("x^2+x+1");
    auto iso = isolate_real_roots(p);
    ASSERT_EQ(iso.size(), k);
    EXPECT_EQ(count_real_roots(p), iso.size());
    std::sort(roots.begin(), roots.end());
    for (std::size_t i = 0; i < k; ++i) {
      EXPECT_LT(iso.roots[i].lo, roots[i]);
      EXPECT_GT(iso.roots[i].hi, roots[i]);
      EXPECT_FALSE(iso.squarefree.eval(iso.roots[i].lo).is_zero());
      EXPECT_FALSE(iso.squarefree.eval(iso.roots[i].hi).is_zero());
    }
  }
}

TEST(Isolation, RandomDegreeEight) {
  std::mt19937_64 g(18);
  for (int it = 0; it < 500; ++it) {
    UniPoly p = random_uni(g, 1 + it % 8, 9);
    auto iso = isolate_real_roots(p);
    EXPECT_EQ(count_real_roots(p), iso.size());
    for (std::size_t i = 0; i + 1 < iso.size(); ++i) EXPECT_LE(iso.roots[i].hi, iso.roots[i + 1].lo);
    for (const auto& iv : iso.roots) EXPECT_EQ(sturm_count(p, iv.lo, iv.hi), 1u);
  }
}

TEST(Isolation, RefineToWidth) {
  auto iso = isolate_real_roots(U("x^2-2"));
  RootInterval iv = iso.roots[1];
  refine(iso.squarefree, iv, Rational(1, 1000000));
  EXPECT_LE(iv.width(), Rational(1, 1000000));
  EXPECT_LT(iv.lo * iv.lo, Rational(2));
  EXPECT_GT(iv.hi * iv.hi, Rational(2));
}

TEST(Resultant, EuclidMatchesCofactorSylvester) {
  std::mt19937_64 g(19);
  for (int it = 0; it < 60; ++it) {
    UniPoly f = random_uni(g, 1 + it % 4), h = random_uni(g, 1 + (it / 4) % 3);
    std::size_t m = f.deg(), n = h.deg();
    std::vector<std::vector<Rational>> s(m + n, std::vector<Rational>(m + n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = f.coeff(m - k);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = h.coeff(n - k);
    Rational want = testutil::cofactor_det(s);
    EXPECT_EQ(resultant(f, h), want);
    EXPECT_EQ(sylvester_determinant(f, m, h, n), want);
  }
}

TEST(Interpolation, RecoversPolynomial) {
  std::mt19937_64 g(20);
  for (int it = 0; it < 30; ++it) {
    UniPoly p = random_uni(g, static_cast<std::size_t>(it % 7));
    std::vector<Rational> xs, ys;
    for (int k = 0; k <= 7; ++k) {
      xs.emplace_back(k - 3);
      ys.push_back(p.eval(xs.back()));
    }
    EXPECT_EQ(interpolate(xs, ys), p);
  }
}

TEST(Parser, GrammarAndErrors) {
  EXPECT_EQ(P("x+y^2"), P("x1 + x2^2"));
  EXPECT_EQ(parse_poly("x1*x2*x3").arity(), 3u);
  EXPECT_EQ(P("1/2*x - 3/4"), MultiPoly::variable(2, 0) * Rational(1, 2) - MultiPoly::constant(2, Rational(3, 4)));
  EXPECT_EQ(P("-(x-y)^2"), P("-x^2 + 2*x*y - y^2"));
  EXPECT_THROW(P("x +"), PreconditionError);
  EXPECT_THROW(P("2x"), PreconditionError);
  EXPECT_THROW(P("x/y"), PreconditionError);
  EXPECT_THROW(P("w"), PreconditionError);
  EXPECT_EQ(parse_uni("t^2+1"), parse_uni("x^2+1"));
}

TEST(Parser, RoundTripThroughTextAndJson) {
  std::mt19937_64 g(21);
  for (int it = 0; it < 200; ++it) {
    std::size_t d = 1 + static_cast<std::size_t>(it % 5);
    MultiPoly p = random_multi(g, d, 5, 6);
    EXPECT_EQ(parse_poly_arity(p.str(), d), p);
    EXPECT_EQ(multipoly_from_json(to_json(p)), p);
  }
}

TEST(Serialization, GrlexOrder) {
  auto j = to_json(P("y + x^2 + x*y + 3"));
  ASSERT_EQ(j["terms"].size(), 4u);
  EXPECT_EQ(j["terms"][0]["exp"], json::parse("[2,0]"));
  EXPECT_EQ(j["terms"][1]["exp"], json::parse("[1,1]"));
  EXPECT_EQ(j["terms"][2]["exp"], json::parse("[0,1]"));
  EXPECT_EQ(j["terms"][3]["coef"], "3");
}

TEST(Multivariate, ExactDivision) {
  std::mt19937_64 g(22);
  for (int it = 0; it < 50; ++it) {
    MultiPoly a = random_multi(g, 3, 3, 4), b = random_multi(g, 3, 3, 4);
    if (b.is_zero()) continue;
    EXPECT_EQ(exact_div(a * b, b), a);
  }
  EXPECT_THROW(exact_div(P("x+1"), P("y")), InternalError);
}

TEST(Multivariate, SquarefreePart) {
  EXPECT_EQ(bivariate_squarefree(P("(x-y)^2*(x+y)")), P("x^2 - y^2"));
  EXPECT_EQ(bivariate_squarefree(P("3*(y^2-x^3)")), P("x^3 - y^2"));
}
