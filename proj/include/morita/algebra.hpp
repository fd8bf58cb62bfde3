#pragma once

// Finite-dimensional associative unital algebras given by structure
// constants, and their two-sided ideals.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "morita/matrix.hpp"

namespace morita {

/// Failures found by a validator; empty means valid.
struct ValidationReport {
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  void fail(std::string what) { failures.push_back(std::move(what)); }
  void merge(const ValidationReport& other, const std::string& prefix = "") {
    for (const auto& f : other.failures) failures.push_back(prefix + f);
  }
};

template <class F>
class Algebra {
 public:
  /// mul[i][j] is the coordinate vector of e_i·e_j.
  Algebra(F field, std::vector<std::vector<Vec<F>>> mul, Vec<F> unit, std::vector<std::string> labels = {})
      : field_(std::move(field)), dim_(unit.size()), unit_(std::move(unit)), labels_(std::move(labels)) {
    if (mul.size() != dim_) throw invalid_input("algebra: mul has " + std::to_string(mul.size()) +
                                                " rows but dim is " + std::to_string(dim_));
    for (std::size_t i = 0; i < dim_; ++i) {
      if (mul[i].size() != dim_) throw invalid_input("algebra: mul[" + std::to_string(i) + "] has wrong length");
      for (std::size_t j = 0; j < dim_; ++j)
        if (mul[i][j].size() != dim_)
          throw invalid_input("algebra: product e" + std::to_string(i) + "·e" + std::to_string(j) +
                              " has wrong length");
    }
    if (labels_.empty())
      for (std::size_t i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i));
    if (labels_.size() != dim_) throw invalid_input("algebra: label count differs from dim");
    for (std::size_t i = 0; i < dim_; ++i) {
      left_.emplace_back(field_, dim_, dim_);
      right_.emplace_back(field_, dim_, dim_);
    }
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        left_[i].set_col(j, mul[i][j]);
        right_[j].set_col(i, mul[i][j]);
      }
  }

  const F& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Vec<F>& unit() const { return unit_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

  /// Left multiplication by e_i on the algebra's coordinate space.
  const Matrix<F>& left_mult(std::size_t i) const { return left_[i]; }
  /// Right multiplication by e_j.
  const Matrix<F>& right_mult(std::size_t j) const { return right_[j]; }

  Vec<F> basis_product(std::size_t i, std::size_t j) const { return left_[i].col(j); }

  Matrix<F> left_mult_of(const Vec<F>& x) const { return linear_combination(field_, dim_, dim_, left_, x); }
  Matrix<F> right_mult_of(const Vec<F>& y) const { return linear_combination(field_, dim_, dim_, right_, y); }

  Vec<F> multiply(const Vec<F>& x, const Vec<F>& y) const { return left_mult_of(x) * y; }

  Vec<F> basis_vector(std::size_t i) const { return unit_vec(field_, dim_, i); }
  Vec<F> zero() const { return zero_vec(field_, dim_); }

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.field_ == b.field_ && a.dim_ == b.dim_ && a.unit_ == b.unit_ && a.left_ == b.left_;
  }

 private:
  F field_;
  std::size_t dim_;
  Vec<F> unit_;
  std::vector<std::string> labels_;
  std::vector<Matrix<F>> left_, right_;
};

template <class F>
using AlgebraRef = std::shared_ptr<const Algebra<F>>;

template <class F>
bool same_algebra(const AlgebraRef<F>& a, const AlgebraRef<F>& b) {
  return a == b || (a && b && *a == *b);
}

template <class F>
ValidationReport validate_algebra(const Algebra<F>& a) {
  ValidationReport report;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        // (e_i e_j) e_k versus e_i (e_j e_k)
        Vec<F> lhs = a.right_mult(k) * a.basis_product(i, j);
        Vec<F> rhs = a.left_mult(i) * a.basis_product(j, k);
        if (lhs != rhs)
          report.fail("associativity (" + a.label(i) + "," + a.label(j) + "," + a.label(k) + ")");
      }
  for (std::size_t i = 0; i < n; ++i) {
    if (a.multiply(a.unit(), a.basis_vector(i)) != a.basis_vector(i)) report.fail("left unit law at " + a.label(i));
    if (a.multiply(a.basis_vector(i), a.unit()) != a.basis_vector(i)) report.fail("right unit law at " + a.label(i));
  }
  return report;
}

template <class F>
Algebra<F> opposite_algebra(const Algebra<F>& a) {
  std::vector<std::vector<Vec<F>>> mul(a.dim(), std::vector<Vec<F>>(a.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) mul[i][j] = a.basis_product(j, i);
  return Algebra<F>(a.field(), std::move(mul), a.unit(), a.labels());
}

template <class F>
bool is_idempotent(const Algebra<F>& a, const Vec<F>& e) {
  return a.multiply(e, e) == e;
}

// ---- standard algebras ----

template <class F>
Algebra<F> ground_algebra(const F& field) {
  return Algebra<F>(field, {{{field.one()}}}, {field.one()}, {"1"});
}

/// Full matrix algebra M_n with basis e_rc in row-major order.
template <class F>
Algebra<F> matrix_algebra(const F& field, std::size_t n) {
  const std::size_t d = n * n;
  auto idx = [n](std::size_t r, std::size_t c) { return r * n + c; };
  std::vector<std::vector<Vec<F>>> mul(d, std::vector<Vec<F>>(d, zero_vec(field, d)));
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) labels.push_back("e" + std::to_string(r + 1) + std::to_string(c + 1));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) mul[idx(a, b)][idx(b, c)][idx(a, c)] = field.one();
  Vec<F> unit = zero_vec(field, d);
  for (std::size_t r = 0; r < n; ++r) unit[idx(r, r)] = field.one();
  return Algebra<F>(field, std::move(mul), std::move(unit), std::move(labels));
}

/// Upper-triangular n×n matrices, basis e_rc (r ≤ c) in row-major order.
/// For n = 2 the basis is (e11, e12, e22).
template <class F>
Algebra<F> upper_triangular_algebra(const F& field, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) cells.emplace_back(r, c);
  const std::size_t d = cells.size();
  auto index_of = [&](std::size_t r, std::size_t c) {
    for (std::size_t i = 0; i < d; ++i)
      if (cells[i] == std::make_pair(r, c)) return i;
    return d;
  };
  std::vector<std::vector<Vec<F>>> mul(d, std::vector<Vec<F>>(d, zero_vec(field, d)));
  std::vector<std::string> labels;
  for (auto [r, c] : cells) labels.push_back("e" + std::to_string(r + 1) + std::to_string(c + 1));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (cells[i].second == cells[j].first) mul[i][j][index_of(cells[i].first, cells[j].second)] = field.one();
  Vec<F> unit = zero_vec(field, d);
  for (std::size_t r = 0; r < n; ++r) unit[index_of(r, r)] = field.one();
  return Algebra<F>(field, std::move(mul), std::move(unit), std::move(labels));
}

// ---- ideals ----

template <class F>
struct Ideal {
  AlgebraRef<F> algebra;
  Basis<F> basis;

  std::size_t dim() const { return basis.dim(); }
  bool is_zero() const { return basis.dim() == 0; }
  bool is_whole() const { return basis.dim() == algebra->dim(); }
  friend bool operator==(const Ideal& a, const Ideal& b) { return a.basis == b.basis; }
};

/// True iff span(basis) is stable under left and right multiplication.
template <class F>
bool is_two_sided_stable(const Algebra<F>& a, const Basis<F>& basis) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t t = 0; t < basis.dim(); ++t) {
      Vec<F> v = basis.vector(t);
      if (!basis.contains(a.left_mult(i) * v) || !basis.contains(a.right_mult(i) * v)) return false;
    }
  return true;
}

template <class F>
Ideal<F> zero_ideal(const AlgebraRef<F>& a) {
  return {a, Basis<F>(a->field(), a->dim())};
}

template <class F>
Ideal<F> unit_ideal(const AlgebraRef<F>& a) {
  return {a, Basis<F>::full(a->field(), a->dim())};
}

/// Smallest two-sided ideal containing the generators; multiplies by all
/// basis elements on both sides until the dimension stops growing.
template <class F>
Ideal<F> two_sided_ideal_closure(const AlgebraRef<F>& a, const std::vector<Vec<F>>& generators) {
  Basis<F> current = Basis<F>::span(a->field(), a->dim(), generators);
  while (true) {
    std::vector<Vec<F>> vectors = current.vectors();
    for (std::size_t t = 0; t < current.dim(); ++t) {
      Vec<F> v = current.vector(t);
      for (std::size_t i = 0; i < a->dim(); ++i) {
        vectors.push_back(a->left_mult(i) * v);
        vectors.push_back(a->right_mult(i) * v);
      }
    }
    Basis<F> next = Basis<F>::span(a->field(), a->dim(), vectors);
    if (next.dim() == current.dim()) return {a, std::move(next)};
    current = std::move(next);
  }
}

template <class F>
Ideal<F> ideal_product(const Ideal<F>& i, const Ideal<F>& j) {
  const auto& a = *i.algebra;
  std::vector<Vec<F>> products;
  for (std::size_t s = 0; s < i.dim(); ++s)
    for (std::size_t t = 0; t < j.dim(); ++t) products.push_back(a.multiply(i.basis.vector(s), j.basis.vector(t)));
  return {i.algebra, Basis<F>::span(a.field(), a.dim(), products)};
}

template <class F>
struct StableIdeal {
  Ideal<F> ideal;
  std::size_t exponent;  // least n with I^n = I^(n+1)
};

/// The descending chain I ⊇ I² ⊇ ... stabilizes at an idempotent ideal.
template <class F>
StableIdeal<F> stabilize_ideal(const Ideal<F>& i) {
  Ideal<F> power = i;
  std::size_t n = 1;
  while (true) {
    Ideal<F> next = ideal_product(power, i);
    if (next.basis == power.basis) return {std::move(power), n};
    power = std::move(next);
    ++n;
  }
}

template <class F>
struct QuotientAlgebra {
  Algebra<F> algebra;
  Matrix<F> projection;
  bool degenerate;  // the ideal was the whole algebra
};

template <class F>
QuotientAlgebra<F> quotient_algebra(const Ideal<F>& ideal) {
  const auto& a = *ideal.algebra;
  auto q = quotient_structure(a.dim(), ideal.basis);
  std::vector<std::vector<Vec<F>>> mul(q.quotient_dim, std::vector<Vec<F>>(q.quotient_dim));
  for (std::size_t i = 0; i < q.quotient_dim; ++i)
    for (std::size_t j = 0; j < q.quotient_dim; ++j)
      mul[i][j] = q.projection * a.multiply(q.section.col(i), q.section.col(j));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < q.quotient_dim; ++i)
    for (std::size_t k = 0; k < a.dim(); ++k)
      if (!is_zero(q.section(k, i))) labels.push_back(a.label(k));
  return {Algebra<F>(a.field(), std::move(mul), q.projection * a.unit(), std::move(labels)), q.projection,
          q.quotient_dim == 0};
}

}  // namespace morita
