// Image-set growth of a few polynomials on arithmetic and geometric progressions.
#include <iostream>

#include "symexp/expansion.hpp"
#include "symexp/parse.hpp"
#include "symexp/structure.hpp"

using namespace symexp;

int main() {
  const char* polys[] = {"x+y", "x+y^2", "(x+y)^2", "x*y", "x*y+x"};
  SetParams ap, gp;
  gp.step = 2;
  for (const char* text : polys) {
    MultiPoly p = parse_poly(text);
    auto verdict = classify_single(p, 1);
    std::cout << text << "  (" << verdict_name(verdict.kind) << ")\n";
    for (auto [name, kind, params] : {std::tuple{"AP", SetKind::AP, ap}, std::tuple{"GP", SetKind::GP, gp}}) {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> samples;
      std::cout << "  " << name << ":";
      for (std::size_t n : {8, 16, 32, 64}) {
        FiniteSet a = gen_set(kind, n, params);
        std::size_t size = image_set(p, {a, a}).size();
        samples.emplace_back(n, size);
        std::cout << " n=" << n << " |P(A,A)|=" << size;
      }
      std::cout << "  slope " << fit_exponent(samples).slope.to_double() << "\n";
    }
  }
}
