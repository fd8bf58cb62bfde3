#pragma once

// Gradings by a finite group G given by its multiplication table. Basis
// vectors of algebras and modules carry a degree; maps of degree σ send
// degree λ into degree λσ, and the suspension M(σ) has M(σ)_λ = M_{λσ}.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "morita/equivalence.hpp"

namespace morita {

class FiniteGroup {
 public:
  explicit FiniteGroup(std::vector<std::vector<std::size_t>> table) : table_(std::move(table)) {
    const std::size_t n = table_.size();
    if (n == 0) throw invalid_input("group: empty table");
    for (const auto& row : table_) {
      if (row.size() != n) throw invalid_input("group: table is not square");
      for (auto x : row)
        if (x >= n) throw invalid_input("group: entry out of range");
    }
    identity_ = n;
    for (std::size_t e = 0; e < n && identity_ == n; ++e) {
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
      if (ok) identity_ = e;
    }
    if (identity_ == n) throw invalid_input("group: no identity element");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw invalid_input("group: associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                std::to_string(c) + ")");
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
    for (std::size_t a = 0; a < n; ++a)
      if (inverse_[a] == n) throw invalid_input("group: element " + std::to_string(a) + " has no inverse");
  }

  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

inline FiniteGroup cyclic_group(std::size_t n) {
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup(std::move(t));
}

template <class F>
struct GradedAlgebra {
  AlgebraRef<F> base;
  FiniteGroup group;
  std::vector<std::size_t> degree;
};

template <class F>
struct GradedModule {
  LeftModule<F> base;
  std::vector<std::size_t> degree;
};

template <class F>
struct GradedBimodule {
  Bimodule<F> base;
  std::vector<std::size_t> degree;
};

namespace detail {

/// A linear map between graded spaces respects degrees up to a shift σ when
/// entry (r, c) vanishes unless target degree r = source degree c · σ.
template <class F>
bool homogeneous_map(const FiniteGroup& g, const Matrix<F>& a, const std::vector<std::size_t>& source,
                     const std::vector<std::size_t>& target, std::size_t sigma) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!is_zero(a(r, c)) && target[r] != g.mul(source[c], sigma)) return false;
  return true;
}

/// Left action by elements of degree τ: entry (r, c) allowed iff deg r = τ·deg c.
template <class F>
bool homogeneous_left(const FiniteGroup& g, const Matrix<F>& a, const std::vector<std::size_t>& deg, std::size_t tau) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!is_zero(a(r, c)) && deg[r] != g.mul(tau, deg[c])) return false;
  return true;
}

template <class F>
bool is_graded_subspace(const Basis<F>& u, const std::vector<std::size_t>& degrees, std::size_t order) {
  try {
    homogeneous_frame(u, degrees, order);
    return true;
  } catch (const invalid_input&) {
    return false;
  }
}

inline void check_degrees(const std::vector<std::size_t>& deg, std::size_t dim, std::size_t order, const char* what) {
  if (deg.size() != dim) throw invalid_input(std::string(what) + ": expected " + std::to_string(dim) + " degrees");
  for (auto d : deg)
    if (d >= order) throw invalid_input(std::string(what) + ": degree out of range");
}

}  // namespace detail

template <class F>
ValidationReport validate_graded(const GradedAlgebra<F>& a) {
  detail::check_degrees(a.degree, a.base->dim(), a.group.order(), "graded algebra");
  ValidationReport report;
  const auto& r = *a.base;
  for (std::size_t i = 0; i < r.dim(); ++i)
    for (std::size_t j = 0; j < r.dim(); ++j) {
      const Vec<F>& p = r.basis_product(i, j);
      for (std::size_t k = 0; k < r.dim(); ++k)
        if (!is_zero(p[k]) && a.degree[k] != a.group.mul(a.degree[i], a.degree[j]))
          report.fail("grading: " + r.label(i) + "*" + r.label(j) + " has a component outside degree deg(" +
                      r.label(i) + ")deg(" + r.label(j) + ")");
    }
  for (std::size_t k = 0; k < r.dim(); ++k)
    if (!is_zero(r.unit()[k]) && a.degree[k] != a.group.identity())
      report.fail("grading: unit has a component in degree " + std::to_string(a.degree[k]));
  return report;
}

template <class F>
ValidationReport validate_graded(const GradedAlgebra<F>& a, const GradedModule<F>& m) {
  detail::check_degrees(m.degree, m.base.dim, a.group.order(), "graded module");
  ValidationReport report = validate_module(m.base);
  for (std::size_t i = 0; i < a.base->dim(); ++i)
    if (!detail::homogeneous_left(a.group, m.base.action[i], m.degree, a.degree[i]))
      report.fail("grading: action of " + a.base->label(i) + " leaves the degree components");
  return report;
}

template <class F>
ValidationReport validate_graded(const GradedAlgebra<F>& r, const GradedAlgebra<F>& s, const GradedBimodule<F>& m) {
  detail::check_degrees(m.degree, m.base.dim, r.group.order(), "graded bimodule");
  ValidationReport report = validate_module(m.base);
  for (std::size_t i = 0; i < r.base->dim(); ++i)
    if (!detail::homogeneous_left(r.group, m.base.left_action[i], m.degree, r.degree[i]))
      report.fail("grading: left action of " + r.base->label(i) + " leaves the degree components");
  for (std::size_t i = 0; i < s.base->dim(); ++i)
    if (!detail::homogeneous_map(s.group, m.base.right_action[i], m.degree, m.degree, s.degree[i]))
      report.fail("grading: right action of " + s.base->label(i) + " leaves the degree components");
  return report;
}

/// M(σ): the degree λ of each basis vector becomes λσ⁻¹.
template <class F>
GradedModule<F> suspension(const FiniteGroup& g, const GradedModule<F>& m, std::size_t sigma) {
  GradedModule<F> out = m;
  for (auto& d : out.degree) d = g.mul(d, g.inverse(sigma));
  return out;
}

template <class F>
GradedModule<F> graded_regular(const GradedAlgebra<F>& a) {
  return {regular_left(a.base), a.degree};
}

/// Entries of a (target × source) map allowed in degree σ.
inline EntryMask degree_mask(const FiniteGroup& g, const std::vector<std::size_t>& source,
                             const std::vector<std::size_t>& target, std::size_t sigma) {
  EntryMask mask(target.size() * source.size());
  for (std::size_t r = 0; r < target.size(); ++r)
    for (std::size_t c = 0; c < source.size(); ++c) mask[r * source.size() + c] = target[r] == g.mul(source[c], sigma);
  return mask;
}

/// HOM_R(M, N)_σ for every σ.
template <class F>
std::vector<HomSpace<F>> graded_hom(const FiniteGroup& g, const GradedModule<F>& m, const GradedModule<F>& n) {
  std::vector<HomSpace<F>> out;
  for (std::size_t sigma = 0; sigma < g.order(); ++sigma) {
    EntryMask mask = degree_mask(g, m.degree, n.degree, sigma);
    out.push_back(hom_space(m.base, n.base, &mask));
  }
  return out;
}

/// HOM_R(A, X) for a graded R-T bimodule A as a graded left T-module, on
/// the basis made of the degree components' bases. Columns of `maps` are
/// the flattened basis maps.
template <class F>
struct GradedHomModule {
  GradedModule<F> module;
  Frame<F> maps;
  std::size_t target_dim, source_dim;

  Matrix<F> element(std::size_t t) const {
    return Matrix<F>::unflatten(maps.vectors().field(), target_dim, source_dim, maps.vectors().col(t));
  }
  Vec<F> coordinates(const Matrix<F>& f) const { return maps.coordinates(f.flat()); }
  bool contains(const Matrix<F>& f) const { return maps.contains(f.flat()); }
};

template <class F>
GradedHomModule<F> graded_hom_module(const FiniteGroup& g, const GradedBimodule<F>& a, const GradedModule<F>& x) {
  const F& field = x.base.field();
  std::vector<Vec<F>> vectors;
  std::vector<std::size_t> degrees;
  GradedModule<F> a_left{a.base.left(), a.degree};
  auto parts = graded_hom(g, a_left, x);
  for (std::size_t sigma = 0; sigma < parts.size(); ++sigma)
    for (std::size_t t = 0; t < parts[sigma].dim(); ++t) {
      vectors.push_back(parts[sigma].basis().vector(t));
      degrees.push_back(sigma);
    }
  Frame<F> frame = Frame<F>::of(field, x.base.dim * a.base.dim, vectors);
  GradedHomModule<F> out{{{a.base.right_algebra, frame.dim(), {}}, std::move(degrees)}, frame, x.base.dim, a.base.dim};
  for (const auto& rt : a.base.right_action) {
    Matrix<F> act(field, frame.dim(), frame.dim());
    for (std::size_t s = 0; s < frame.dim(); ++s) {
      Matrix<F> moved = out.element(s) * rt;
      if (!out.contains(moved)) throw std::logic_error("graded hom: precomposition leaves the Hom space");
      act.set_col(s, out.coordinates(moved));
    }
    out.module.base.action.push_back(std::move(act));
  }
  return out;
}

/// A graded two-sided ideal as a graded R-R bimodule on a homogeneous basis.
template <class F>
GradedBimodule<F> graded_ideal_bimodule(const GradedAlgebra<F>& a, const Ideal<F>& ideal) {
  if (!detail::is_graded_subspace(ideal.basis, a.degree, a.group.order())) throw invalid_input("ideal is not graded");
  GradedFrame<F> gf = homogeneous_frame(ideal.basis, a.degree, a.group.order());
  const auto& r = *a.base;
  Bimodule<F> b{a.base, a.base, gf.frame.dim(), {}, {}};
  for (std::size_t i = 0; i < r.dim(); ++i) {
    b.left_action.push_back(gf.frame.left_inverse() * r.left_mult(i) * gf.frame.vectors());
    b.right_action.push_back(gf.frame.left_inverse() * r.right_mult(i) * gf.frame.vectors());
  }
  return {std::move(b), std::move(gf.degrees)};
}

template <class F>
struct GradedAlpha {
  GradedHomModule<F> hom;
  Matrix<F> map;
  bool invertible;
  bool degree_preserving;
};

/// α: M → HOM_R(I, M), α(m)(a) = a·m on a homogeneous basis of I.
template <class F>
GradedAlpha<F> graded_alpha(const GradedAlgebra<F>& a, const Ideal<F>& ideal, const GradedModule<F>& m) {
  GradedBimodule<F> ib = graded_ideal_bimodule(a, ideal);
  GradedFrame<F> gf = homogeneous_frame(ideal.basis, a.degree, a.group.order());
  GradedHomModule<F> hom = graded_hom_module(a.group, ib, m);
  const F& field = m.base.field();
  Matrix<F> map(field, hom.module.base.dim, m.base.dim);
  std::vector<Matrix<F>> acts;
  for (std::size_t t = 0; t < gf.frame.dim(); ++t) acts.push_back(m.base.act(gf.frame.vectors().col(t)));
  for (std::size_t c = 0; c < m.base.dim; ++c) {
    Matrix<F> f(field, m.base.dim, gf.frame.dim());
    for (std::size_t t = 0; t < gf.frame.dim(); ++t) f.set_col(t, acts[t].col(c));
    if (!hom.contains(f)) throw std::logic_error("graded alpha: a ↦ a·m is not a module map");
    map.set_col(c, hom.coordinates(f));
  }
  bool invertible = map.square() && is_invertible(map);
  bool preserving = detail::homogeneous_map(a.group, map, m.degree, hom.module.degree, a.group.identity());
  return {std::move(hom), std::move(map), invertible, preserving};
}

/// α invertible and degree preserving.
template <class F>
bool graded_closed_test(const GradedAlgebra<F>& a, const TorsionTheory<F>& t, const GradedModule<F>& m) {
  GradedAlpha<F> alpha = graded_alpha(a, t.iinf, m);
  return alpha.invertible && alpha.degree_preserving;
}

template <class F>
struct GradedQuotient {
  GradedModule<F> module;
  Matrix<F> projection;
};

/// M/U for a graded submodule U; the quotient basis is made of standard
/// basis vectors, so it inherits their degrees.
template <class F>
GradedQuotient<F> graded_quotient(const GradedModule<F>& m, const Basis<F>& u) {
  auto q = quotient_structure(m.base.dim, u);
  std::vector<Matrix<F>> action;
  for (const auto& a : m.base.action) action.push_back(q.projection * a * q.section);
  std::vector<std::size_t> degrees;
  for (std::size_t c = 0; c < q.quotient_dim; ++c)
    for (std::size_t k = 0; k < m.base.dim; ++k)
      if (!is_zero(q.section(k, c))) degrees.push_back(m.degree[k]);
  return {{{m.base.algebra, q.quotient_dim, std::move(action)}, std::move(degrees)}, std::move(q.projection)};
}

/// HOM_R(I∞, M/t̄M) with its grading.
template <class F>
GradedModule<F> graded_localize(const GradedAlgebra<F>& a, const TorsionTheory<F>& t, const GradedModule<F>& m) {
  Submodule<F> tm = torsion_submodule(t, m.base);
  GradedQuotient<F> q = graded_quotient(m, tm.basis);
  GradedAlpha<F> alpha = graded_alpha(a, t.iinf, q.module);
  if (!graded_closed_test(a, t, alpha.hom.module)) throw std::logic_error("graded localize: result is not closed");
  return alpha.hom.module;
}

/// Graded isomorphism: an invertible map in HOM_e.
template <class F>
IsoSearch<F> graded_isomorphic(const FiniteGroup& g, const GradedModule<F>& m, const GradedModule<F>& n,
                               const SearchPolicy& policy = {}) {
  if (m.base.dim != n.base.dim) return {std::nullopt, true};
  std::vector<std::size_t> hm(g.order(), 0), hn(g.order(), 0);
  for (auto d : m.degree) ++hm[d];
  for (auto d : n.degree) ++hn[d];
  if (hm != hn) return {std::nullopt, true};
  EntryMask mask = degree_mask(g, m.degree, n.degree, g.identity());
  return find_invertible(hom_space(m.base, n.base, &mask), policy);
}

// ---- graded contexts ----

template <class F>
struct GradedContext {
  MoritaContext<F> context;
  GradedAlgebra<F> r, s;
  std::vector<std::size_t> m_degree, n_degree;

  GradedBimodule<F> m() const { return {context.m, m_degree}; }
  GradedBimodule<F> n() const { return {context.n, n_degree}; }
};

template <class F>
GradedContext<F> swap_context(const GradedContext<F>& g) {
  return {swap_context(g.context), g.s, g.r, g.n_degree, g.m_degree};
}

template <class F>
ValidationReport validate_graded(const GradedContext<F>& g) {
  ValidationReport report = validate_context(g.context);
  report.merge(validate_graded(g.r), "R: ");
  report.merge(validate_graded(g.s), "S: ");
  report.merge(validate_graded(g.r, g.s, g.m()), "M: ");
  report.merge(validate_graded(g.s, g.r, g.n()), "N: ");
  const auto& c = g.context;
  Matrix<F> phi = c.phi_raw(), psi = c.psi_raw();
  const FiniteGroup& grp = g.r.group;
  for (std::size_t a = 0; a < c.m.dim; ++a)
    for (std::size_t b = 0; b < c.n.dim; ++b) {
      std::size_t d = grp.mul(g.m_degree[a], g.n_degree[b]);
      for (std::size_t k = 0; k < c.r->dim(); ++k)
        if (!is_zero(phi(k, a * c.n.dim + b)) && g.r.degree[k] != d)
          report.fail("grading: phi(m" + std::to_string(a) + "⊗n" + std::to_string(b) + ") is not homogeneous");
      std::size_t e = grp.mul(g.n_degree[b], g.m_degree[a]);
      for (std::size_t k = 0; k < c.s->dim(); ++k)
        if (!is_zero(psi(k, b * c.m.dim + a)) && g.s.degree[k] != e)
          report.fail("grading: psi(n" + std::to_string(b) + "⊗m" + std::to_string(a) + ") is not homogeneous");
    }
  return report;
}

/// Corner context at a homogeneous idempotent of degree identity, with the
/// induced gradings.
template <class F>
GradedContext<F> graded_corner_context(const GradedAlgebra<F>& r, const Vec<F>& e) {
  for (std::size_t k = 0; k < e.size(); ++k)
    if (!is_zero(e[k]) && r.degree[k] != r.group.identity())
      throw invalid_input("graded corner: idempotent is not of degree identity");
  auto [ctx, emb] = corner_context_embedded(r.base, e, &r.degree, r.group.order());
  GradedAlgebra<F> s{ctx.s, r.group, emb.s_degrees};
  return {std::move(ctx), r, std::move(s), emb.m_degrees, emb.n_degrees};
}

/// Y ↦ HOM(B, HOM(A, Y)) with the unit y ↦ (b ↦ (a ↦ pairing(a⊗b)·y)).
template <class F>
struct GradedUnit {
  GradedHomModule<F> inner, outer;
  Matrix<F> map;
  bool invertible;
  bool degree_preserving;
};

template <class F>
GradedUnit<F> graded_pairing_unit(const FiniteGroup& g, const GradedBimodule<F>& a, const GradedBimodule<F>& b,
                                  const Matrix<F>& pairing_raw, const GradedModule<F>& x) {
  const F& field = x.base.field();
  GradedHomModule<F> inner = graded_hom_module(g, a, x);
  GradedHomModule<F> outer = graded_hom_module(g, b, inner.module);
  const std::size_t da = a.base.dim, db = b.base.dim, dx = x.base.dim;
  std::vector<Matrix<F>> acts;
  for (std::size_t p = 0; p < da * db; ++p) acts.push_back(x.base.act(pairing_raw.col(p)));
  Matrix<F> map(field, outer.module.base.dim, dx);
  for (std::size_t c = 0; c < dx; ++c) {
    Matrix<F> over_b(field, inner.module.base.dim, db);
    for (std::size_t bi = 0; bi < db; ++bi) {
      Matrix<F> over_a(field, dx, da);
      for (std::size_t ai = 0; ai < da; ++ai) over_a.set_col(ai, acts[ai * db + bi].col(c));
      if (!inner.contains(over_a)) throw std::logic_error("graded unit: inner map is not a module map");
      over_b.set_col(bi, inner.coordinates(over_a));
    }
    if (!outer.contains(over_b)) throw std::logic_error("graded unit: outer map is not a module map");
    map.set_col(c, outer.coordinates(over_b));
  }
  bool invertible = map.square() && is_invertible(map);
  bool preserving = detail::homogeneous_map(g, map, x.degree, outer.module.degree, g.identity());
  return {std::move(inner), std::move(outer), std::move(map), invertible, preserving};
}

// ---- graded catalogs ----

template <class F>
struct GradedCatalog {
  GradedAlgebra<F> algebra;
  std::vector<GradedModule<F>> modules;
  std::vector<std::string> names;
  Provenance provenance = Provenance::user_supplied;
  std::size_t max_dim = 0;

  std::string describe() const {
    if (provenance == Provenance::exhaustive) return "exhaustive up to dim " + std::to_string(max_dim);
    if (provenance == Provenance::sampled) return "sampled up to dim " + std::to_string(max_dim);
    return "user-supplied";
  }
};

namespace detail {

template <class F>
std::vector<std::size_t> graded_fingerprint(const FiniteGroup& g, const GradedModule<F>& m) {
  std::vector<std::size_t> out{m.base.dim};
  std::vector<std::size_t> hist(g.order(), 0);
  for (auto d : m.degree) ++hist[d];
  out.insert(out.end(), hist.begin(), hist.end());
  for (const auto& a : m.base.action) out.push_back(rank(a));
  return out;
}

template <class F>
bool insert_graded_class(const FiniteGroup& g, std::vector<GradedModule<F>>& classes,
                         std::vector<std::vector<std::size_t>>& prints, const GradedModule<F>& m,
                         const SearchPolicy& policy) {
  auto print = graded_fingerprint(g, m);
  bool exhaustive = true;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (prints[k] != print) continue;
    auto iso = graded_isomorphic(g, classes[k], m, policy);
    if (iso.found()) return true;
    exhaustive = exhaustive && iso.exhaustive;
  }
  classes.push_back(m);
  prints.push_back(std::move(print));
  return exhaustive;
}

}  // namespace detail

/// Graded simples, as quotients of the suspensions R(σ) by maximal graded
/// left ideals.
template <class F>
std::pair<std::vector<GradedModule<F>>, bool> graded_simple_modules(const GradedAlgebra<F>& a,
                                                                    const CatalogOptions& opt = {},
                                                                    const SearchPolicy& policy = {}) {
  const FiniteGroup& g = a.group;
  LeftModule<F> reg = regular_left(a.base);
  SubmoduleFamily<F> family = submodules_or_sample(reg, opt.budget, opt.samples, opt.seed);
  bool exhaustive = family.exhaustive;
  std::vector<Submodule<F>> graded;
  for (const auto& l : family.members)
    if (detail::is_graded_subspace(l.basis, a.degree, g.order())) graded.push_back(l);
  std::vector<GradedModule<F>> classes;
  std::vector<std::vector<std::size_t>> prints;
  for (std::size_t sigma = 0; sigma < g.order(); ++sigma) {
    GradedModule<F> shifted = suspension(g, graded_regular(a), sigma);
    for (const auto& l : graded) {
      if (l.dim() == reg.dim) continue;
      bool maximal = true;
      for (const auto& other : graded)
        if (other.dim() > l.dim() && other.dim() < reg.dim && other.basis.contains(l.basis)) maximal = false;
      if (!maximal) continue;
      GradedModule<F> s = graded_quotient(shifted, l.basis).module;
      exhaustive = detail::insert_graded_class(g, classes, prints, s, policy) && exhaustive;
    }
  }
  std::stable_sort(classes.begin(), classes.end(), [](const auto& x, const auto& y) { return x.base.dim < y.base.dim; });
  return {std::move(classes), exhaustive};
}

/// One graded module per graded isomorphism class of dimension ≤ max_dim,
/// built as graded extensions of smaller ones by graded simples.
template <class F>
GradedCatalog<F> build_graded_catalog(const GradedAlgebra<F>& a, std::size_t max_dim, const CatalogOptions& opt = {},
                                      const SearchPolicy& policy = {}) {
  const FiniteGroup& g = a.group;
  const F& field = a.base->field();
  Rng rng(opt.seed);
  auto [simples, exhaustive] = graded_simple_modules(a, opt, policy);
  std::vector<GradedModule<F>> classes{{zero_module(a.base), {}}};
  std::vector<std::vector<std::size_t>> prints{detail::graded_fingerprint(g, classes[0])};
  std::vector<std::size_t> level_start{0, 1};
  for (std::size_t d = 1; d <= max_dim; ++d) {
    for (const auto& s : simples) {
      if (s.base.dim > d) continue;
      for (std::size_t k = level_start[d - s.base.dim]; k < level_start[d - s.base.dim + 1]; ++k) {
        const GradedModule<F> x = classes[k];
        const std::size_t n = a.base->dim(), ds = s.base.dim, dx = x.base.dim;
        ExtensionMasks masks{std::vector<bool>(n * ds * dx), std::vector<bool>(ds * dx)};
        for (std::size_t r = 0; r < ds; ++r)
          for (std::size_t c = 0; c < dx; ++c) {
            masks.coboundary[r * dx + c] = s.degree[r] == x.degree[c];
            for (std::size_t i = 0; i < n; ++i)
              masks.cocycle[i * ds * dx + r * dx + c] = s.degree[r] == g.mul(a.degree[i], x.degree[c]);
          }
        CocycleData<F> cd = cocycle_data(s.base, x.base, &masks);
        Frame<F> zf = Frame<F>::of(cd.cocycles);
        std::vector<Vec<F>> b_in_z;
        for (std::size_t t = 0; t < cd.coboundaries.dim(); ++t)
          b_in_z.push_back(zf.coordinates(cd.coboundaries.vector(t)));
        auto qz = quotient_structure(zf.dim(), Basis<F>::span(field, zf.dim(), b_in_z));
        std::vector<std::size_t> degrees = s.degree;
        degrees.insert(degrees.end(), x.degree.begin(), x.degree.end());
        bool all = detail::for_each_coordinate_vector(
            field, qz.quotient_dim, opt.budget, opt.samples, rng, [&](const Vec<F>& coords) {
              Vec<F> flat = zf.vectors() * (qz.section * coords);
              std::vector<Matrix<F>> c;
              for (std::size_t i = 0; i < n; ++i) {
                Matrix<F> ci(field, ds, dx);
                for (std::size_t rr = 0; rr < ds; ++rr)
                  for (std::size_t kk = 0; kk < dx; ++kk) ci(rr, kk) = flat[i * ds * dx + rr * dx + kk];
                c.push_back(std::move(ci));
              }
              GradedModule<F> e{extension_module(s.base, x.base, c), degrees};
              exhaustive = detail::insert_graded_class(g, classes, prints, e, policy) && exhaustive;
            });
        exhaustive = exhaustive && all;
      }
    }
    level_start.push_back(classes.size());
  }
  GradedCatalog<F> out{a, std::move(classes), {}, exhaustive ? Provenance::exhaustive : Provenance::sampled, max_dim};
  for (std::size_t k = 0; k < out.modules.size(); ++k)
    out.names.push_back("X" + std::to_string(k) + "(dim " + std::to_string(out.modules[k].base.dim) + ")");
  return out;
}

// ---- graded equivalence ----

namespace detail {

template <class F>
void graded_kato_muller_side(Report& report, const GradedContext<F>& g, const TorsionTheory<F>& ti,
                             const TorsionTheory<F>& tj, const GradedCatalog<F>& cat, const char* unit) {
  const FiniteGroup& grp = g.r.group;
  for (std::size_t k = 0; k < cat.modules.size(); ++k) {
    const GradedModule<F>& x0 = cat.modules[k];
    std::string name = cat.names[k];
    bool closed = graded_closed_test(g.r, ti, x0);
    report.add(name, "graded closed agrees with closed", closed == is_closed(ti, x0.base));
    for (std::size_t sigma = 0; sigma < grp.order(); ++sigma) {
      GradedModule<F> shifted = suspension(grp, x0, sigma);
      bool same = graded_closed_test(g.r, ti, shifted) == closed &&
                  torsion_submodule(ti, shifted.base).dim() == torsion_submodule(ti, x0.base).dim() &&
                  ideal_action_image(ti.i, shifted.base).dim() == ideal_action_image(ti.i, x0.base).dim();
      report.add(name, "suspension by " + std::to_string(sigma) + " keeps closedness and torsion", same);
    }
    GradedModule<F> x = closed ? x0 : graded_localize(g.r, ti, x0);
    if (!closed) name = "a(" + name + ")";
    GradedHomModule<F> fx = graded_hom_module(grp, g.m(), x);
    report.add(name, "F'(X) graded closed (dim " + std::to_string(fx.module.base.dim) + ")",
               graded_closed_test(g.s, tj, fx.module));
    GradedUnit<F> u = graded_pairing_unit(grp, g.m(), g.n(), g.context.phi_raw(), x);
    report.add(name, std::string(unit) + " invertible of degree e: G'F'(X) ~ X", u.invertible && u.degree_preserving,
               u.map);
  }
}

}  // namespace detail

template <class F>
Report verify_graded_kato_muller(const GradedContext<F>& g, const GradedCatalog<F>& cat_r,
                                 const GradedCatalog<F>& cat_s) {
  Report report{"graded-kato-muller", {}, {}};
  ValidationReport valid = validate_graded(g);
  for (const auto& f : valid.failures) report.add("context", f, false);
  if (!valid.ok()) return report;
  auto t = trace_ideals(g.context);
  TorsionTheory<F> ti = torsion_theory(t.i), tj = torsion_theory(t.j);
  report.fact("group order", std::to_string(g.r.group.order()));
  report.fact("I", std::to_string(ti.i.dim()) + "-dim of " + std::to_string(g.r.base->dim()));
  report.fact("J", std::to_string(tj.i.dim()) + "-dim of " + std::to_string(g.s.base->dim()));
  report.fact("catalog R", cat_r.describe() + ", " + std::to_string(cat_r.modules.size()) + " modules");
  report.fact("catalog S", cat_s.describe() + ", " + std::to_string(cat_s.modules.size()) + " modules");
  detail::graded_kato_muller_side(report, g, ti, tj, cat_r, "eta'");
  detail::graded_kato_muller_side(report, swap_context(g), tj, ti, cat_s, "rho'");
  return report;
}

}  // namespace morita
