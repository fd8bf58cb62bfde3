#pragma once

// Left modules, right modules and bimodules over structure-constant algebras.
// A module is a vector space together with one action matrix per basis
// element of the acting algebra.

#include <string>
#include <utility>
#include <vector>

#include "morita/algebra.hpp"

namespace morita {

template <class F>
struct LeftModule {
  AlgebraRef<F> algebra;
  std::size_t dim = 0;
  std::vector<Matrix<F>> action;  // action[i]: dim × dim, left action of e_i

  const F& field() const { return algebra->field(); }
  /// Action of an arbitrary algebra element.
  Matrix<F> act(const Vec<F>& r) const { return linear_combination(field(), dim, dim, action, r); }
};

/// Right action: action[i] sends m to m·e_i, so action[j]·action[i] = act(e_i e_j).
template <class F>
struct RightModule {
  AlgebraRef<F> algebra;
  std::size_t dim = 0;
  std::vector<Matrix<F>> action;

  const F& field() const { return algebra->field(); }
  Matrix<F> act(const Vec<F>& r) const { return linear_combination(field(), dim, dim, action, r); }
};

template <class F>
struct Bimodule {
  AlgebraRef<F> left_algebra;
  AlgebraRef<F> right_algebra;
  std::size_t dim = 0;
  std::vector<Matrix<F>> left_action;
  std::vector<Matrix<F>> right_action;

  const F& field() const { return left_algebra->field(); }
  LeftModule<F> left() const { return {left_algebra, dim, left_action}; }
  RightModule<F> right() const { return {right_algebra, dim, right_action}; }
  Matrix<F> act_left(const Vec<F>& r) const { return linear_combination(field(), dim, dim, left_action, r); }
  Matrix<F> act_right(const Vec<F>& s) const { return linear_combination(field(), dim, dim, right_action, s); }
};

template <class F>
struct Submodule {
  Basis<F> basis;
  std::size_t dim() const { return basis.dim(); }
  friend bool operator==(const Submodule& a, const Submodule& b) { return a.basis == b.basis; }
};

namespace detail {

template <class F>
void check_shapes(const Algebra<F>& a, std::size_t dim, const std::vector<Matrix<F>>& action, const char* side) {
  if (action.size() != a.dim())
    throw invalid_input(std::string(side) + " action: expected " + std::to_string(a.dim()) + " matrices, got " +
                        std::to_string(action.size()));
  for (std::size_t i = 0; i < action.size(); ++i)
    if (action[i].rows() != dim || action[i].cols() != dim)
      throw invalid_input(std::string(side) + " action matrix for " + a.label(i) + " is " +
                          std::to_string(action[i].rows()) + "x" + std::to_string(action[i].cols()) + ", expected " +
                          std::to_string(dim) + "x" + std::to_string(dim));
}

template <class F>
void check_laws(ValidationReport& report, const Algebra<F>& a, std::size_t dim, const std::vector<Matrix<F>>& action,
                bool right, const char* side) {
  const F& field = a.field();
  if (linear_combination(field, dim, dim, action, a.unit()) != Matrix<F>::identity(field, dim))
    report.fail(std::string(side) + " unit acts nontrivially");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Matrix<F> composite = right ? action[j] * action[i] : action[i] * action[j];
      if (composite != linear_combination(field, dim, dim, action, a.basis_product(i, j)))
        report.fail(std::string(side) + " action law (" + a.label(i) + "," + a.label(j) + ")");
    }
}

}  // namespace detail

template <class F>
ValidationReport validate_module(const LeftModule<F>& m) {
  detail::check_shapes(*m.algebra, m.dim, m.action, "left");
  ValidationReport report;
  detail::check_laws(report, *m.algebra, m.dim, m.action, false, "left");
  return report;
}

template <class F>
ValidationReport validate_module(const RightModule<F>& m) {
  detail::check_shapes(*m.algebra, m.dim, m.action, "right");
  ValidationReport report;
  detail::check_laws(report, *m.algebra, m.dim, m.action, true, "right");
  return report;
}

template <class F>
ValidationReport validate_module(const Bimodule<F>& m) {
  detail::check_shapes(*m.left_algebra, m.dim, m.left_action, "left");
  detail::check_shapes(*m.right_algebra, m.dim, m.right_action, "right");
  ValidationReport report;
  detail::check_laws(report, *m.left_algebra, m.dim, m.left_action, false, "left");
  detail::check_laws(report, *m.right_algebra, m.dim, m.right_action, true, "right");
  for (std::size_t i = 0; i < m.left_action.size(); ++i)
    for (std::size_t j = 0; j < m.right_action.size(); ++j)
      if (m.left_action[i] * m.right_action[j] != m.right_action[j] * m.left_action[i])
        report.fail("left and right actions do not commute (" + m.left_algebra->label(i) + "," +
                    m.right_algebra->label(j) + ")");
  return report;
}

// ---- standard modules ----

template <class F>
LeftModule<F> zero_module(const AlgebraRef<F>& a) {
  return {a, 0, std::vector<Matrix<F>>(a->dim(), Matrix<F>(a->field(), 0, 0))};
}

template <class F>
LeftModule<F> regular_left(const AlgebraRef<F>& a) {
  std::vector<Matrix<F>> action;
  for (std::size_t i = 0; i < a->dim(); ++i) action.push_back(a->left_mult(i));
  return {a, a->dim(), std::move(action)};
}

template <class F>
RightModule<F> regular_right(const AlgebraRef<F>& a) {
  std::vector<Matrix<F>> action;
  for (std::size_t i = 0; i < a->dim(); ++i) action.push_back(a->right_mult(i));
  return {a, a->dim(), std::move(action)};
}

template <class F>
Bimodule<F> regular_bimodule(const AlgebraRef<F>& a) {
  return {a, a, a->dim(), regular_left(a).action, regular_right(a).action};
}

/// A left module viewed as an A-k bimodule over the ground field k.
template <class F>
Bimodule<F> with_trivial_right(const LeftModule<F>& m, const AlgebraRef<F>& ground) {
  return {m.algebra, ground, m.dim, m.action, {Matrix<F>::identity(m.field(), m.dim)}};
}

template <class F>
LeftModule<F> direct_sum(const LeftModule<F>& a, const LeftModule<F>& b) {
  const F& field = a.field();
  std::vector<Matrix<F>> action;
  for (std::size_t i = 0; i < a.action.size(); ++i) {
    Matrix<F> m(field, a.dim + b.dim, a.dim + b.dim);
    for (std::size_t r = 0; r < a.dim; ++r)
      for (std::size_t c = 0; c < a.dim; ++c) m(r, c) = a.action[i](r, c);
    for (std::size_t r = 0; r < b.dim; ++r)
      for (std::size_t c = 0; c < b.dim; ++c) m(a.dim + r, a.dim + c) = b.action[i](r, c);
    action.push_back(std::move(m));
  }
  return {a.algebra, a.dim + b.dim, std::move(action)};
}

/// Conjugate by an invertible change of basis: new action = P A P^{-1}.
template <class F>
LeftModule<F> change_basis(const LeftModule<F>& m, const Matrix<F>& p) {
  auto pinv = inverse(p);
  if (!pinv) throw invalid_input("change_basis: matrix is singular");
  LeftModule<F> out = m;
  for (auto& a : out.action) a = p * a * *pinv;
  return out;
}

// ---- subspaces carrying module structure ----

/// Independent vectors (the columns of `vectors`) with a precomputed left
/// inverse, so coordinates of members are a single matrix-vector product.
template <class F>
class Frame {
 public:
  explicit Frame(Matrix<F> vectors) : vectors_(std::move(vectors)), left_inverse_(vectors_.field(), 0, 0) {
    const F& field = vectors_.field();
    auto e = rref(vectors_.transpose());
    if (e.rank() != vectors_.cols()) throw std::logic_error("Frame: vectors are dependent");
    Matrix<F> square(field, vectors_.cols(), vectors_.cols());
    Matrix<F> select(field, vectors_.cols(), vectors_.rows());
    for (std::size_t i = 0; i < e.rank(); ++i) {
      square.set_row(i, vectors_.row(e.pivots[i]));
      select(i, e.pivots[i]) = field.one();
    }
    left_inverse_ = *inverse(square) * select;
  }

  static Frame of(const Basis<F>& b) { return Frame(b.rows().transpose()); }
  static Frame of(const F& field, std::size_t ambient, const std::vector<Vec<F>>& vs) {
    return Frame(Matrix<F>::from_columns(field, ambient, vs));
  }

  std::size_t dim() const { return vectors_.cols(); }
  std::size_t ambient_dim() const { return vectors_.rows(); }
  const Matrix<F>& vectors() const { return vectors_; }
  const Matrix<F>& left_inverse() const { return left_inverse_; }

  /// Coordinates of v, assuming v lies in the span.
  Vec<F> coordinates(const Vec<F>& v) const { return left_inverse_ * v; }
  bool contains(const Vec<F>& v) const { return vectors_ * coordinates(v) == v; }

 private:
  Matrix<F> vectors_;
  Matrix<F> left_inverse_;
};

template <class F>
struct GradedFrame {
  Frame<F> frame;
  std::vector<std::size_t> degrees;  // degree of each frame vector
};

/// A basis of U made of homogeneous vectors, given the degree of every
/// ambient coordinate. Throws when U is not spanned by homogeneous vectors.
template <class F>
GradedFrame<F> homogeneous_frame(const Basis<F>& u, const std::vector<std::size_t>& coord_degrees,
                                 std::size_t group_order) {
  const F& field = u.field();
  std::vector<Vec<F>> vectors;
  std::vector<std::size_t> degrees;
  for (std::size_t g = 0; g < group_order; ++g) {
    std::vector<Vec<F>> coords;
    for (std::size_t j = 0; j < u.ambient_dim(); ++j)
      if (coord_degrees[j] == g) coords.push_back(unit_vec(field, u.ambient_dim(), j));
    Basis<F> meet = subspace_ops(u, Basis<F>::span(field, u.ambient_dim(), coords)).intersection;
    for (std::size_t t = 0; t < meet.dim(); ++t) {
      vectors.push_back(meet.vector(t));
      degrees.push_back(g);
    }
  }
  if (vectors.size() != u.dim()) throw invalid_input("subspace is not spanned by homogeneous elements");
  return {Frame<F>::of(field, u.ambient_dim(), vectors), std::move(degrees)};
}

template <class F>
bool is_stable(const std::vector<Matrix<F>>& action, const Basis<F>& basis) {
  for (const auto& a : action)
    for (std::size_t t = 0; t < basis.dim(); ++t)
      if (!basis.contains(a * basis.vector(t))) return false;
  return true;
}

template <class F>
bool is_submodule(const LeftModule<F>& m, const Basis<F>& basis) {
  return is_stable(m.action, basis);
}

/// Action restricted to an invariant subspace, in the frame's coordinates.
template <class F>
std::vector<Matrix<F>> restrict_action(const std::vector<Matrix<F>>& action, const Frame<F>& frame) {
  std::vector<Matrix<F>> out;
  for (const auto& a : action) out.push_back(frame.left_inverse() * a * frame.vectors());
  return out;
}

template <class F>
LeftModule<F> submodule_as_module(const LeftModule<F>& m, const Frame<F>& frame) {
  return {m.algebra, frame.dim(), restrict_action(m.action, frame)};
}

template <class F>
LeftModule<F> submodule_as_module(const LeftModule<F>& m, const Submodule<F>& s) {
  return submodule_as_module(m, Frame<F>::of(s.basis));
}

template <class F>
struct QuotientModule {
  LeftModule<F> module;
  Matrix<F> projection;  // M → M/U
  Matrix<F> section;     // standard-coordinate lift
};

template <class F>
QuotientModule<F> quotient_module(const LeftModule<F>& m, const Basis<F>& u) {
  auto q = quotient_structure(m.dim, u);
  std::vector<Matrix<F>> action;
  for (const auto& a : m.action) action.push_back(q.projection * a * q.section);
  return {{m.algebra, q.quotient_dim, std::move(action)}, std::move(q.projection), std::move(q.section)};
}

/// Ann_M(I) = {x : v·x = 0 for all v in I}.
template <class F>
Submodule<F> annihilator(const LeftModule<F>& m, const Ideal<F>& ideal) {
  Matrix<F> stacked(m.field(), 0, m.dim);
  for (std::size_t t = 0; t < ideal.dim(); ++t) stacked = vstack(stacked, m.act(ideal.basis.vector(t)));
  return {kernel_basis(stacked)};
}

/// I·M, spanned by v·m over ideal basis v and module basis m.
template <class F>
Submodule<F> ideal_action_image(const Ideal<F>& ideal, const LeftModule<F>& m) {
  std::vector<Vec<F>> vectors;
  for (std::size_t t = 0; t < ideal.dim(); ++t) {
    Matrix<F> a = m.act(ideal.basis.vector(t));
    for (std::size_t c = 0; c < m.dim; ++c) vectors.push_back(a.col(c));
  }
  return {Basis<F>::span(m.field(), m.dim, vectors)};
}

/// Smallest submodule containing the given vectors.
template <class F>
Submodule<F> submodule_closure(const LeftModule<F>& m, const std::vector<Vec<F>>& generators) {
  Basis<F> current = Basis<F>::span(m.field(), m.dim, generators);
  while (true) {
    std::vector<Vec<F>> vectors = current.vectors();
    for (std::size_t t = 0; t < current.dim(); ++t)
      for (const auto& a : m.action) vectors.push_back(a * current.vector(t));
    Basis<F> next = Basis<F>::span(m.field(), m.dim, vectors);
    if (next.dim() == current.dim()) return {std::move(next)};
    current = std::move(next);
  }
}

}  // namespace morita
