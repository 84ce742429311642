#pragma once

#include <vector>

#include "errors.hpp"
#include "multipoly.hpp"
#include "unipoly.hpp"

namespace symexp {

// Fraction-free determinant of a matrix of polynomials (Bareiss).
inline MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m, std::size_t arity) {
  std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(arity, 1);
  MultiPoly prev = MultiPoly::constant(arity, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return MultiPoly(arity);
      std::swap(m[r], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = exact_div(std::move(v), prev);
      }
      m[i][k] = MultiPoly(arity);
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

// Determinant of the Sylvester matrix of f and g with respect to x_var.
// The result keeps the arity and does not involve x_var.
inline MultiPoly sylvester_resultant(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
  require(f.arity() == g.arity(), "sylvester_resultant: arity mismatch");
  require(var < f.arity(), "sylvester_resultant: variable out of range");
  std::size_t m = f.deg_in(var), n = g.deg_in(var);
  require(!f.is_zero() && !g.is_zero() && m > 0 && n > 0,
          "sylvester_resultant needs positive degree in the eliminated variable");
  auto fc = f.coefficients_in(var), gc = g.coefficients_in(var);
  std::size_t d = f.arity(), size = m + n;
  std::vector<std::vector<MultiPoly>> s(size, std::vector<MultiPoly>(size, MultiPoly(d)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = fc[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = gc[n - k];
  return bareiss_determinant(std::move(s), d);
}

// The deterministic probe sequence 0, 1, -1, 2, -2, ...
inline Rational probe_point(std::size_t k) {
  long h = static_cast<long>((k + 1) / 2);
  return k % 2 == 1 ? Rational(h) : Rational(-h);
}

// Res_{x_elim}(F, G) for bivariate F, G as a polynomial in the other variable,
// by evaluation at deg F * deg G + 1 points and interpolation. Formal degrees
// in x_elim are the true degrees of F and G.
inline UniPoly bivariate_resultant(const MultiPoly& f, const MultiPoly& g, std::size_t elim) {
  require(f.arity() == 2 && g.arity() == 2 && elim < 2, "bivariate_resultant needs arity 2");
  require(!f.is_zero() && !g.is_zero(), "bivariate_resultant of zero");
  std::size_t keep = 1 - elim;
  std::size_t m = f.deg_in(elim), n = g.deg_in(elim);
  std::size_t bound = *f.total_degree() * *g.total_degree();
  std::vector<Rational> xs, ys;
  for (std::size_t k = 0; k <= bound; ++k) {
    Rational x = probe_point(k);
    std::vector<Rational> pt(2);
    pt[keep] = x;
    UniPoly fs = f.restrict_to(elim, pt), gs = g.restrict_to(elim, pt);
    xs.push_back(x);
    ys.push_back(sylvester_determinant(fs, m, gs, n));
  }
  return interpolate(xs, ys);
}

}  // namespace symexp
