#pragma once

#include <utility>
#include <vector>

#include "errors.hpp"
#include "multipoly.hpp"
#include "unipoly.hpp"

namespace symexp {

// F in Q[x][y]: entry k is the coefficient of y^k as a polynomial in x.
using RecPoly = std::vector<UniPoly>;

inline RecPoly to_recursive(const MultiPoly& f) {
  require(f.arity() == 2, "expected a bivariate polynomial");
  RecPoly out(f.is_zero() ? 0 : f.deg_in(1) + 1);
  std::vector<std::vector<Rational>> dense(out.size(), std::vector<Rational>(f.deg_in(0) + 1));
  for (const auto& [e, c] : f.terms()) dense[e[1]][e[0]] = c;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = UniPoly(std::move(dense[k]));
  return out;
}

inline MultiPoly from_recursive(const RecPoly& r) {
  MultiPoly::TermMap t;
  for (std::size_t k = 0; k < r.size(); ++k)
    for (std::size_t i = 0; i < r[k].coeffs().size(); ++i)
      if (!r[k].coeffs()[i].is_zero())
        t.emplace(Exponent{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(k)}, r[k].coeffs()[i]);
  return MultiPoly(2, std::move(t));
}

namespace detail {

inline void rec_trim(RecPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline UniPoly rec_content(const RecPoly& p) {
  UniPoly g;
  for (const auto& c : p) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

inline RecPoly rec_divide_content(RecPoly p, const UniPoly& c) {
  for (auto& a : p) a = exact_div(a, c);
  return p;
}

// Primitive part in Q[x][y], scaled to integer-free small coefficients.
inline RecPoly rec_primitive(const RecPoly& p) {
  UniPoly c = rec_content(p);
  RecPoly q = rec_divide_content(p, c);
  // Normalise the rational scale so coefficient sizes stay small.
  Integer l = 1, g = 0;
  for (const auto& a : q)
    for (const auto& v : a.coeffs()) l = lcm(l, v.den());
  for (const auto& a : q)
    for (const auto& v : a.coeffs()) g = gcd(g, v.num() * (l / v.den()));
  Rational s(l, g);
  for (auto& a : q) a = a * s;
  return q;
}

// lc(b)^(deg a - deg b + 1) * a mod b, in y over Q[x].
inline RecPoly rec_prem(RecPoly a, const RecPoly& b) {
  std::size_t db = b.size() - 1;
  const UniPoly& lb = b.back();
  while (a.size() >= b.size()) {
    UniPoly la = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& c : a) c = c * lb;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= la * b[j];
    rec_trim(a);
  }
  return a;
}

}  // namespace detail

// gcd in Q[x, y], primitive with positive grlex-leading coefficient.
inline MultiPoly bivariate_gcd(const MultiPoly& f, const MultiPoly& g) {
  require(f.arity() == 2 && g.arity() == 2, "bivariate_gcd needs arity 2");
  if (f.is_zero() && g.is_zero()) throw PreconditionError("gcd of two zero polynomials");
  if (f.is_zero()) return g.primitive_normalized();
  if (g.is_zero()) return f.primitive_normalized();
  RecPoly a = to_recursive(f), b = to_recursive(g);
  UniPoly cont = gcd(detail::rec_content(a), detail::rec_content(b));
  a = detail::rec_primitive(a);
  b = detail::rec_primitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (b.size() > 1) {
    RecPoly r = detail::rec_prem(a, b);
    a = std::move(b);
    if (r.empty()) {
      b.clear();
      break;
    }
    b = detail::rec_primitive(r);
  }
  RecPoly h;
  if (b.empty()) {
    h = a;  // a | previous a: the primitive gcd
  } else {
    h = RecPoly{UniPoly::constant(1)};  // remainder of y-degree 0: coprime primitive parts
  }
  for (auto& c : h) c = c * cont;
  return from_recursive(h).primitive_normalized();
}

// F / gcd(F, dF/dx, dF/dy), primitive with positive leading coefficient.
inline MultiPoly bivariate_squarefree(const MultiPoly& f) {
  require(!f.is_zero(), "square-free part of zero");
  if (f.is_constant()) return MultiPoly::constant(2, 1);
  MultiPoly g = bivariate_gcd(f, bivariate_gcd(f.partial(0), f.partial(1)));
  return exact_div(f, g).primitive_normalized();
}

}  // namespace symexp
