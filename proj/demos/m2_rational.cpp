// M2(Q) and its corner e11 R e11 = Q: a strict context, hence an
// equivalence of module categories.
#include <iostream>

#include "morita/equivalence.hpp"

using namespace morita;

int main() {
  RationalField q;
  auto m2 = std::make_shared<const Algebra<RationalField>>(matrix_algebra(q, 2));
  Vec<RationalField> e11{q.one(), q.zero(), q.zero(), q.zero()};
  MoritaContext<RationalField> g = corner_context(m2, e11);

  auto t = trace_ideals(g);
  std::cout << "trace ideals: " << t.i.dim() << ", " << t.j.dim() << "\n";

  // over Q the catalog is user supplied
  LeftModule<RationalField> column = tensor_over(g.m, regular_left(g.s)).module;
  Catalog<RationalField> cr = user_catalog(m2, {zero_module(m2), column, regular_left(m2)}, {"0", "column", "M2"});
  Catalog<RationalField> cs = user_catalog(g.s, {zero_module(g.s), regular_left(g.s)}, {"0", "Q"});
  Report r = verify_strict_equivalence(g, cr, cs);
  for (const auto& v : r.verdicts) std::cout << (v.pass ? "PASS " : "FAIL ") << v.subject << ": " << v.check << "\n";
  return r.failures() == 0 ? 0 : 1;
}
