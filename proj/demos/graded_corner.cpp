// T2 graded by C2 with e12 in degree 1.
#include <iostream>

#include "morita/graded.hpp"

using namespace morita;

int main() {
  PrimeField f(2);
  auto t2 = std::make_shared<const Algebra<PrimeField>>(upper_triangular_algebra(f, 2));
  GradedAlgebra<PrimeField> r{t2, cyclic_group(2), {0, 1, 0}};
  GradedContext<PrimeField> gc = graded_corner_context(r, Vec<PrimeField>{f.zero(), f.zero(), f.one()});

  GradedCatalog<PrimeField> cr = build_graded_catalog(gc.r, 3), cs = build_graded_catalog(gc.s, 3);
  std::cout << "graded catalogs: " << cr.modules.size() << " and " << cs.modules.size() << " modules\n";

  GradedModule<PrimeField> reg = graded_regular(r);
  GradedModule<PrimeField> shifted = suspension(r.group, reg, 1);
  std::cout << "R(1) degrees:";
  for (auto d : shifted.degree) std::cout << " " << d;
  std::cout << "\n";

  Report km = verify_graded_kato_muller(gc, cr, cs);
  std::cout << "graded Kato-Muller: " << km.verdicts.size() << " verdicts, " << km.failures() << " failures\n";
  return km.failures() == 0 ? 0 : 1;
}
