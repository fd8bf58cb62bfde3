#pragma once

// Catalogs of modules up to a dimension bound, one per isomorphism class.
// A nonzero module E has a simple submodule S, so E is an extension of
// some smaller X′ by S:
//
//       [ A_S(r)  c(r)   ]
//   r ↦ [   0     A_X′(r)]
//
// with c a cocycle. Cohomologous cocycles give isomorphic modules, so the
// builder runs over Z/B for every pair (S, X′) and deduplicates.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "morita/isomorphism.hpp"
#include "morita/submodules.hpp"

namespace morita {

enum class Provenance { exhaustive, user_supplied, sampled };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::exhaustive: return "exhaustive";
    case Provenance::user_supplied: return "user-supplied";
    case Provenance::sampled: return "sampled";
  }
  return "?";
}

template <class F>
struct Catalog {
  AlgebraRef<F> algebra;
  std::vector<LeftModule<F>> modules;
  std::vector<std::string> names;
  Provenance provenance = Provenance::user_supplied;
  std::size_t max_dim = 0;
  std::uint64_t seed = 0;

  std::string describe() const {
    if (provenance == Provenance::exhaustive) return "exhaustive up to dim " + std::to_string(max_dim);
    if (provenance == Provenance::sampled)
      return "sampled up to dim " + std::to_string(max_dim) + " (seed " + std::to_string(seed) + ")";
    return "user-supplied";
  }
};

struct CatalogOptions {
  std::uint64_t budget = default_enumeration_budget;
  std::size_t samples = 64;
  std::uint64_t seed = 0;
  bool allow_sampling = true;
};

namespace detail {

template <class F>
std::vector<std::size_t> fingerprint(const LeftModule<F>& m, const std::vector<LeftModule<F>>& simples) {
  std::vector<std::size_t> out{m.dim, hom_space(m, m).dim()};
  for (const auto& a : m.action) out.push_back(rank(a));
  for (const auto& s : simples) {
    out.push_back(hom_space(s, m).dim());
    out.push_back(hom_space(m, s).dim());
  }
  return out;
}

/// Adds m unless an isomorphic module is present. Returns false when a
/// non-isomorphism verdict rested on sampling.
template <class F>
bool insert_class(std::vector<LeftModule<F>>& classes, std::vector<std::vector<std::size_t>>& prints,
                  const LeftModule<F>& m, const std::vector<LeftModule<F>>& simples, const SearchPolicy& policy) {
  auto print = fingerprint(m, simples);
  bool exhaustive = true;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (prints[k] != print) continue;
    auto iso = is_isomorphic(classes[k], m, policy);
    if (iso.found()) return true;
    exhaustive = exhaustive && iso.exhaustive;
  }
  classes.push_back(m);
  prints.push_back(std::move(print));
  return exhaustive;
}

/// Calls fn on q^n coordinate vectors, or on `samples` random ones when that
/// exceeds the budget or the field is infinite. Returns whether it was exhaustive.
template <class F, class Fn>
bool for_each_coordinate_vector(const F& field, std::size_t n, std::uint64_t budget, std::size_t samples, Rng& rng,
                                Fn&& fn) {
  auto q = field.order();
  if (q && exhaustive_within(*q, n, budget)) {
    std::vector<std::uint64_t> digits(n, 0);
    while (true) {
      Vec<F> coords;
      for (auto d : digits) coords.push_back(field.element(d));
      fn(coords);
      std::size_t pos = 0;
      while (pos < n && ++digits[pos] == *q) digits[pos++] = 0;
      if (pos == n) return true;
    }
  }
  fn(zero_vec(field, n));
  for (std::size_t s = 1; s < samples; ++s) {
    Vec<F> coords;
    for (std::size_t i = 0; i < n; ++i) coords.push_back(field.sample(rng));
    fn(coords);
  }
  return false;
}

}  // namespace detail

template <class F>
struct SimpleModules {
  std::vector<LeftModule<F>> modules;
  bool exhaustive;
};

/// Simple modules, one per isomorphism class, as quotients of R by its
/// maximal left ideals.
template <class F>
SimpleModules<F> simple_modules(const AlgebraRef<F>& r, const CatalogOptions& opt = {},
                                const SearchPolicy& policy = {}) {
  LeftModule<F> reg = regular_left(r);
  SubmoduleFamily<F> family = submodules_or_sample(reg, opt.budget, opt.samples, opt.seed);
  bool exhaustive = family.exhaustive;
  std::vector<LeftModule<F>> classes;
  std::vector<std::vector<std::size_t>> prints;
  for (const auto& l : family.members) {
    if (l.dim() == reg.dim) continue;
    bool maximal = true;
    for (const auto& other : family.members)
      if (other.dim() > l.dim() && other.dim() < reg.dim && other.basis.contains(l.basis)) {
        maximal = false;
        break;
      }
    if (!maximal) continue;
    LeftModule<F> s = quotient_module(reg, l.basis).module;
    exhaustive = detail::insert_class(classes, prints, s, {}, policy) && exhaustive;
  }
  std::stable_sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.dim < b.dim; });
  return {std::move(classes), exhaustive};
}

/// The module given by a cocycle c, listed as matrices c(e_i).
template <class F>
LeftModule<F> extension_module(const LeftModule<F>& s, const LeftModule<F>& x, const std::vector<Matrix<F>>& c) {
  const F& field = s.field();
  const std::size_t ds = s.dim, dx = x.dim, d = ds + dx;
  std::vector<Matrix<F>> action;
  for (std::size_t i = 0; i < s.action.size(); ++i) {
    Matrix<F> a(field, d, d);
    for (std::size_t r = 0; r < ds; ++r)
      for (std::size_t k = 0; k < ds; ++k) a(r, k) = s.action[i](r, k);
    for (std::size_t r = 0; r < ds; ++r)
      for (std::size_t k = 0; k < dx; ++k) a(r, ds + k) = c[i](r, k);
    for (std::size_t r = 0; r < dx; ++r)
      for (std::size_t k = 0; k < dx; ++k) a(ds + r, ds + k) = x.action[i](r, k);
    action.push_back(std::move(a));
  }
  return {s.algebra, d, std::move(action)};
}

/// Cocycles Z and coboundaries B for extensions of x by s, both as
/// subspaces of the flattened tuples (c(e_0), ..., c(e_{n-1})).
template <class F>
struct CocycleData {
  Basis<F> cocycles;
  Basis<F> coboundaries;
};

/// Entries allowed to be nonzero in c (flattened like the cocycle tuple) and
/// in the basis change h; used to keep extensions graded.
struct ExtensionMasks {
  std::vector<bool> cocycle;
  std::vector<bool> coboundary;
};

template <class F>
CocycleData<F> cocycle_data(const LeftModule<F>& s, const LeftModule<F>& x, const ExtensionMasks* masks = nullptr) {
  const auto& a = *s.algebra;
  const F& field = a.field();
  const std::size_t n = a.dim(), ds = s.dim, dx = x.dim, block = ds * dx;
  auto var = [&](std::size_t i, std::size_t r, std::size_t k) { return i * block + r * dx + k; };
  // c(e_i e_j) − A_S(e_i) c(e_j) − c(e_i) A_X(e_j) = 0, and c(1) = 0
  std::size_t masked = 0;
  if (masks)
    for (bool allowed : masks->cocycle) masked += allowed ? 0 : 1;
  Matrix<F> system(field, n * n * block + block + masked, n * block);
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec<F>& prod = a.basis_product(i, j);
      for (std::size_t r = 0; r < ds; ++r)
        for (std::size_t k = 0; k < dx; ++k, ++row) {
          for (std::size_t l = 0; l < n; ++l)
            if (!is_zero(prod[l])) system(row, var(l, r, k)) += prod[l];
          for (std::size_t t = 0; t < ds; ++t)
            if (!is_zero(s.action[i](r, t))) system(row, var(j, t, k)) -= s.action[i](r, t);
          for (std::size_t t = 0; t < dx; ++t)
            if (!is_zero(x.action[j](t, k))) system(row, var(i, r, t)) -= x.action[j](t, k);
        }
    }
  const Vec<F>& unit = a.unit();
  for (std::size_t r = 0; r < ds; ++r)
    for (std::size_t k = 0; k < dx; ++k, ++row)
      for (std::size_t l = 0; l < n; ++l) system(row, var(l, r, k)) = unit[l];
  if (masks)
    for (std::size_t v = 0; v < n * block; ++v)
      if (!masks->cocycle[v]) system(row++, v) = field.one();
  Basis<F> z = kernel_basis(system);

  std::vector<Vec<F>> b;
  for (std::size_t r = 0; r < ds; ++r)
    for (std::size_t k = 0; k < dx; ++k) {
      if (masks && !masks->coboundary[r * dx + k]) continue;
      Matrix<F> h(field, ds, dx);
      h(r, k) = field.one();
      Vec<F> v(n * block, field.zero());
      for (std::size_t i = 0; i < n; ++i) {
        Matrix<F> ci = s.action[i] * h - h * x.action[i];
        for (std::size_t rr = 0; rr < ds; ++rr)
          for (std::size_t kk = 0; kk < dx; ++kk) v[var(i, rr, kk)] = ci(rr, kk);
      }
      b.push_back(std::move(v));
    }
  return {std::move(z), Basis<F>::span(field, n * block, b)};
}

/// One module per isomorphism class of dimension ≤ max_dim.
template <class F>
Catalog<F> build_catalog(const AlgebraRef<F>& r, std::size_t max_dim, const CatalogOptions& opt = {},
                         const SearchPolicy& policy = {}) {
  const F& field = r->field();
  Rng rng(opt.seed);
  SimpleModules<F> simples = simple_modules(r, opt, policy);
  bool exhaustive = simples.exhaustive;
  std::vector<LeftModule<F>> classes{zero_module(r)};
  std::vector<std::vector<std::size_t>> prints{detail::fingerprint(classes[0], simples.modules)};
  std::vector<std::size_t> level_start{0, 1};  // level_start[d]: first class of dim d
  for (std::size_t d = 1; d <= max_dim; ++d) {
    for (const auto& s : simples.modules) {
      if (s.dim > d) continue;
      for (std::size_t k = level_start[d - s.dim]; k < level_start[d - s.dim + 1]; ++k) {
        const LeftModule<F> x = classes[k];
        CocycleData<F> cd = cocycle_data(s, x);
        Frame<F> zf = Frame<F>::of(cd.cocycles);
        std::vector<Vec<F>> b_in_z;
        for (std::size_t t = 0; t < cd.coboundaries.dim(); ++t)
          b_in_z.push_back(zf.coordinates(cd.coboundaries.vector(t)));
        auto qz = quotient_structure(zf.dim(), Basis<F>::span(field, zf.dim(), b_in_z));
        const std::size_t n = r->dim(), ds = s.dim, dx = x.dim;
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
              LeftModule<F> e = extension_module(s, x, c);
              exhaustive = detail::insert_class(classes, prints, e, simples.modules, policy) && exhaustive;
            });
        exhaustive = exhaustive && all;
      }
    }
    level_start.push_back(classes.size());
  }
  if (!exhaustive && !opt.allow_sampling)
    throw budget_exceeded("build_catalog: exhaustive catalog exceeds the budget");
  Catalog<F> out{r, std::move(classes), {}, exhaustive ? Provenance::exhaustive : Provenance::sampled, max_dim, opt.seed};
  for (std::size_t k = 0; k < out.modules.size(); ++k)
    out.names.push_back("X" + std::to_string(k) + "(dim " + std::to_string(out.modules[k].dim) + ")");
  return out;
}

template <class F>
Catalog<F> user_catalog(const AlgebraRef<F>& r, std::vector<LeftModule<F>> modules, std::vector<std::string> names) {
  std::size_t max_dim = 0;
  for (const auto& m : modules) max_dim = std::max(max_dim, m.dim);
  return {r, std::move(modules), std::move(names), Provenance::user_supplied, max_dim, 0};
}

}  // namespace morita
