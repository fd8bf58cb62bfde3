#pragma once

// Hom spaces between modules, computed as the kernel of one stacked
// intertwining system, and the module structures they inherit.

#include <utility>
#include <vector>

#include "morita/module.hpp"

namespace morita {

/// A subspace of (target_dim × source_dim) matrices, flattened row-major.
template <class F>
class HomSpace {
 public:
  HomSpace(std::size_t target_dim, std::size_t source_dim, Basis<F> basis)
      : target_(target_dim), source_(source_dim), basis_(std::move(basis)) {}

  std::size_t dim() const { return basis_.dim(); }
  std::size_t target_dim() const { return target_; }
  std::size_t source_dim() const { return source_; }
  const Basis<F>& basis() const { return basis_; }
  const F& field() const { return basis_.field(); }

  Matrix<F> element(std::size_t t) const { return Matrix<F>::unflatten(field(), target_, source_, basis_.vector(t)); }
  std::vector<Matrix<F>> elements() const {
    std::vector<Matrix<F>> out;
    for (std::size_t t = 0; t < dim(); ++t) out.push_back(element(t));
    return out;
  }
  Matrix<F> combine(const Vec<F>& coords) const {
    return Matrix<F>::unflatten(field(), target_, source_, basis_.combine(coords));
  }
  std::optional<Vec<F>> coordinates(const Matrix<F>& f) const { return basis_.coordinates(f.flat()); }
  bool contains(const Matrix<F>& f) const { return coordinates(f).has_value(); }

 private:
  std::size_t target_, source_;
  Basis<F> basis_;
};

/// Entries allowed to be nonzero; used for degree constraints.
using EntryMask = std::vector<bool>;

/// All f (target × source) with f·a = b·f for every pair (a, b).
template <class F>
HomSpace<F> intertwiner_space(const F& field, std::size_t source_dim, std::size_t target_dim,
                              const std::vector<std::pair<const Matrix<F>*, const Matrix<F>*>>& pairs,
                              const EntryMask* mask = nullptr) {
  const std::size_t unknowns = target_dim * source_dim;
  auto var = [source_dim](std::size_t r, std::size_t c) { return r * source_dim + c; };
  std::size_t masked = 0;
  if (mask)
    for (bool allowed : *mask) masked += allowed ? 0 : 1;
  Matrix<F> system(field, pairs.size() * unknowns + masked, unknowns);
  std::size_t row = 0;
  for (auto [a, b] : pairs) {
    for (std::size_t r = 0; r < target_dim; ++r)
      for (std::size_t c = 0; c < source_dim; ++c, ++row) {
        for (std::size_t k = 0; k < source_dim; ++k)
          if (!is_zero((*a)(k, c))) system(row, var(r, k)) += (*a)(k, c);
        for (std::size_t k = 0; k < target_dim; ++k)
          if (!is_zero((*b)(r, k))) system(row, var(k, c)) -= (*b)(r, k);
      }
  }
  if (mask)
    for (std::size_t v = 0; v < unknowns; ++v)
      if (!(*mask)[v]) system(row++, v) = field.one();
  return HomSpace<F>(target_dim, source_dim, kernel_basis(system));
}

/// Hom_R(M, N) for left R-modules.
template <class F>
HomSpace<F> hom_space(const LeftModule<F>& m, const LeftModule<F>& n, const EntryMask* mask = nullptr) {
  if (!same_algebra(m.algebra, n.algebra)) throw invalid_input("hom_space: modules over different algebras");
  std::vector<std::pair<const Matrix<F>*, const Matrix<F>*>> pairs;
  for (std::size_t i = 0; i < m.action.size(); ++i) pairs.emplace_back(&m.action[i], &n.action[i]);
  return intertwiner_space(m.field(), m.dim, n.dim, pairs, mask);
}

/// Bimodule homomorphisms M → N.
template <class F>
HomSpace<F> bimodule_hom_space(const Bimodule<F>& m, const Bimodule<F>& n) {
  if (!same_algebra(m.left_algebra, n.left_algebra) || !same_algebra(m.right_algebra, n.right_algebra))
    throw invalid_input("bimodule_hom_space: bimodules over different algebras");
  std::vector<std::pair<const Matrix<F>*, const Matrix<F>*>> pairs;
  for (std::size_t i = 0; i < m.left_action.size(); ++i) pairs.emplace_back(&m.left_action[i], &n.left_action[i]);
  for (std::size_t i = 0; i < m.right_action.size(); ++i) pairs.emplace_back(&m.right_action[i], &n.right_action[i]);
  return intertwiner_space(m.field(), m.dim, n.dim, pairs);
}

/// Hom_R(M, X) for an R-T bimodule M, as a left T-module via (t·f)(m) = f(m·t).
template <class F>
struct HomModule {
  LeftModule<F> module;
  HomSpace<F> space;
};

/// Left T-action on a space of maps out of M, given M's right T-action.
template <class F>
std::vector<Matrix<F>> precomposition_action(const HomSpace<F>& space, const std::vector<Matrix<F>>& right_action) {
  const F& field = space.field();
  std::vector<Matrix<F>> action;
  for (const auto& rt : right_action) {
    Matrix<F> a(field, space.dim(), space.dim());
    for (std::size_t s = 0; s < space.dim(); ++s) {
      auto coords = space.coordinates(space.element(s) * rt);
      if (!coords) throw std::logic_error("precomposition leaves the Hom space");
      a.set_col(s, *coords);
    }
    action.push_back(std::move(a));
  }
  return action;
}

template <class F>
HomModule<F> hom_module(const Bimodule<F>& m, const LeftModule<F>& x) {
  HomSpace<F> space = hom_space(m.left(), x);
  LeftModule<F> module{m.right_algebra, space.dim(), precomposition_action(space, m.right_action)};
  return {std::move(module), std::move(space)};
}

/// Post-composition with g: Hom(M, X) → Hom(M, X'), in the two Hom bases.
template <class F>
Matrix<F> postcompose(const HomSpace<F>& source, const HomSpace<F>& target, const Matrix<F>& g) {
  Matrix<F> out(source.field(), target.dim(), source.dim());
  for (std::size_t s = 0; s < source.dim(); ++s) {
    auto coords = target.coordinates(g * source.element(s));
    if (!coords) throw std::logic_error("postcompose: image is not a module map");
    out.set_col(s, *coords);
  }
  return out;
}

}  // namespace morita
