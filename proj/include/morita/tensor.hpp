#pragma once

// Tensor products over an algebra: the product space modulo the balancing
// relations (m·r)⊗n − m⊗(r·n). Raw coordinates are ordered m-major.

#include <utility>
#include <vector>

#include "morita/module.hpp"

namespace morita {

template <class F>
class TensorSpace {
 public:
  TensorSpace(std::size_t left_dim, std::size_t right_dim, Basis<F> relations)
      : left_(left_dim), right_(right_dim), relations_(relations), maps_(quotient_structure(left_dim * right_dim, relations)) {}

  std::size_t dim() const { return maps_.quotient_dim; }
  std::size_t left_dim() const { return left_; }
  std::size_t right_dim() const { return right_; }
  std::size_t raw_dim() const { return left_ * right_; }
  const Basis<F>& relations() const { return relations_; }
  const Matrix<F>& projection() const { return maps_.projection; }
  const Matrix<F>& section() const { return maps_.section; }

  /// Class of a ⊗ b.
  Vec<F> pure(const Vec<F>& a, const Vec<F>& b) const { return maps_.projection * kron<F>(a, b); }
  /// Descends a map on the raw product space that preserves the relations.
  Matrix<F> descend(const Matrix<F>& raw) const { return maps_.projection * raw * maps_.section; }

 private:
  std::size_t left_, right_;
  Basis<F> relations_;
  QuotientMaps<F> maps_;
};

/// M ⊗_R N from M's right R-action and N's left R-action.
template <class F>
TensorSpace<F> tensor_space(const F& field, std::size_t m_dim, const std::vector<Matrix<F>>& m_right,
                            std::size_t n_dim, const std::vector<Matrix<F>>& n_left) {
  if (m_right.size() != n_left.size()) throw invalid_input("tensor: the two actions are over different algebras");
  Matrix<F> id_m = Matrix<F>::identity(field, m_dim), id_n = Matrix<F>::identity(field, n_dim);
  Matrix<F> relations(field, m_dim * n_dim, 0);
  for (std::size_t i = 0; i < m_right.size(); ++i)
    relations = hstack(relations, kron(m_right[i], id_n) - kron(id_m, n_left[i]));
  return TensorSpace<F>(m_dim, n_dim, Basis<F>::column_span(relations));
}

template <class F>
struct TensorModule {
  LeftModule<F> module;
  TensorSpace<F> space;
};

template <class F>
struct TensorBimodule {
  Bimodule<F> module;
  TensorSpace<F> space;
};

/// M ⊗_R X for an T-R bimodule M and left R-module X; a left T-module.
template <class F>
TensorModule<F> tensor_over(const Bimodule<F>& m, const LeftModule<F>& x) {
  if (!same_algebra(m.right_algebra, x.algebra)) throw invalid_input("tensor_over: algebra mismatch");
  const F& field = m.field();
  TensorSpace<F> space = tensor_space(field, m.dim, m.right_action, x.dim, x.action);
  Matrix<F> id_x = Matrix<F>::identity(field, x.dim);
  std::vector<Matrix<F>> action;
  for (const auto& l : m.left_action) action.push_back(space.descend(kron(l, id_x)));
  LeftModule<F> module{m.left_algebra, space.dim(), std::move(action)};
  return {std::move(module), std::move(space)};
}

/// M ⊗_S N for bimodules _R M_S and _S N_T; an R-T bimodule.
template <class F>
TensorBimodule<F> tensor_over(const Bimodule<F>& m, const Bimodule<F>& n) {
  if (!same_algebra(m.right_algebra, n.left_algebra)) throw invalid_input("tensor_over: algebra mismatch");
  const F& field = m.field();
  TensorSpace<F> space = tensor_space(field, m.dim, m.right_action, n.dim, n.left_action);
  Matrix<F> id_m = Matrix<F>::identity(field, m.dim), id_n = Matrix<F>::identity(field, n.dim);
  Bimodule<F> module{m.left_algebra, n.right_algebra, space.dim(), {}, {}};
  for (const auto& l : m.left_action) module.left_action.push_back(space.descend(kron(l, id_n)));
  for (const auto& r : n.right_action) module.right_action.push_back(space.descend(kron(id_m, r)));
  return {std::move(module), std::move(space)};
}

/// f ⊗ g between two tensor spaces.
template <class F>
Matrix<F> tensor_map(const TensorSpace<F>& source, const TensorSpace<F>& target, const Matrix<F>& f,
                     const Matrix<F>& g) {
  return target.projection() * kron(f, g) * source.section();
}

}  // namespace morita
