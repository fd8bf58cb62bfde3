// Upper triangular 2x2 matrices over GF(2) and the corner at e22.
// The context is not strict, so only the quotient categories match.
#include <iostream>

#include "morita/equivalence.hpp"

using namespace morita;

int main() {
  PrimeField f(2);
  auto t2 = std::make_shared<const Algebra<PrimeField>>(upper_triangular_algebra(f, 2));
  Vec<PrimeField> e22{f.zero(), f.zero(), f.one()};
  MoritaContext<PrimeField> g = corner_context(t2, e22);

  auto t = trace_ideals(g);
  std::cout << "dim R = " << g.r->dim() << ", dim S = " << g.s->dim() << "\n";
  std::cout << "I: " << t.i.dim() << "-dim, J: " << t.j.dim() << "-dim, strict: " << std::boolalpha
            << is_strict(g) << "\n";

  TorsionTheory<PrimeField> ti = torsion_theory(t.i);
  Localization<PrimeField> loc = localize(ti, regular_left(t2));
  std::cout << "localized regular module: dim " << loc.module.dim << "\n";

  Catalog<PrimeField> cr = build_catalog(g.r, 3), cs = build_catalog(g.s, 3);
  Report km = verify_kato_muller(g, cr, cs);
  std::cout << "Kato-Muller: " << km.verdicts.size() << " verdicts, " << km.failures() << " failures\n";
  for (const auto& [k, v] : km.facts) std::cout << "  " << k << " = " << v << "\n";
  return km.failures() == 0 ? 0 : 1;
}
