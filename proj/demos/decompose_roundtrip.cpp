// Build f(u1(x1) + u2(x2) + u3(x3)) and f(u1 u2), expand, then recover them.
#include <iostream>

#include "symexp/parse.hpp"
#include "symexp/structure.hpp"

using namespace symexp;

namespace {

void show(const char* label, const MultiPoly& p) {
  std::cout << label << ": " << p.terms().size() << " terms\n";
  for (auto det : {detect_additive(p), detect_multiplicative(p)}) {
    if (!det) {
      std::cout << "  " << status_name(det.status) << "\n";
      continue;
    }
    const Decomposition& d = *det.decomposition;
    std::cout << "  " << kind_name(d.kind) << ": f(z) = " << d.outer.str("z") << "\n";
    for (std::size_t i = 0; i < d.inner.size(); ++i)
      std::cout << "    u" << i + 1 << " = " << d.inner[i].str("x" + std::to_string(i + 1)) << "\n";
    std::cout << "  re-expands exactly: " << (expand(d) == p ? "yes" : "no") << "\n";
  }
}

}  // namespace

int main() {
  show("(x1^2 + 3 x2 + x3^3 - x3)^2 - 5", parse_poly("(x1^2 + 3*x2 + x3^3 - x3)^2 - 5"));
  show("(x1^2 + 1)^3 (x2 - 2)^3 + (x1^2 + 1)(x2 - 2)", parse_poly("((x1^2+1)*(x2-2))^3 + (x1^2+1)*(x2-2)"));
  show("x1^2 + x1 x2 + x2^2", parse_poly("x1^2 + x1*x2 + x2^2"));
}
