#pragma once

// Dense exact matrices, reduced row-echelon form, and subspaces in canonical
// echelon form. Vectors are column vectors stored as std::vector.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "morita/field.hpp"

namespace morita {

template <class F>
using Vec = std::vector<typename F::value_type>;

template <class F>
Vec<F> zero_vec(const F& field, std::size_t n) {
  return Vec<F>(n, field.zero());
}

template <class F>
Vec<F> unit_vec(const F& field, std::size_t n, std::size_t i) {
  Vec<F> v = zero_vec(field, n);
  v[i] = field.one();
  return v;
}

template <class F>
bool is_zero_vec(const Vec<F>& v) {
  return std::all_of(v.begin(), v.end(), [](const auto& x) { return is_zero(x); });
}

template <class F>
class Matrix {
 public:
  using K = typename F::value_type;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  /// Builds a matrix whose rows are the given vectors (all of length cols).
  static Matrix from_rows(const F& field, std::size_t cols, const std::vector<Vec<F>>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      assert(rows[r].size() == cols);
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  static Matrix from_columns(const F& field, std::size_t rows, const std::vector<Vec<F>>& cols) {
    Matrix m(field, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) m.set_col(c, cols[c]);
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  K& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const K& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec<F> row(std::size_t r) const {
    return Vec<F>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  Vec<F> col(std::size_t c) const {
    Vec<F> v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
  }
  void set_col(std::size_t c, const Vec<F>& v) {
    assert(v.size() == rows_);
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }
  void set_row(std::size_t r, const Vec<F>& v) {
    assert(v.size() == cols_);
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = v[c];
  }

  /// Row-major flattening; the inverse is Matrix::unflatten.
  const std::vector<K>& flat() const { return data_; }
  static Matrix unflatten(const F& field, std::size_t rows, std::size_t cols, const Vec<F>& v) {
    assert(v.size() == rows * cols);
    Matrix m(field, rows, cols);
    m.data_ = v;
    return m;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const K& x) { return morita::is_zero(x); });
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.rows_);
    Matrix out(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const K& aik = a(i, k);
        if (morita::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (morita::is_zero(b(k, j))) continue;
          K prod = aik * b(k, j);
          out(i, j) += prod;
        }
      }
    return out;
  }

  friend Vec<F> operator*(const Matrix& a, const Vec<F>& v) {
    assert(a.cols_ == v.size());
    Vec<F> out = zero_vec(a.field_, a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (morita::is_zero(v[k]) || morita::is_zero(a(i, k))) continue;
        K prod = a(i, k) * v[k];
        out[i] += prod;
      }
    return out;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  Matrix scaled(const K& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
  }
  Matrix& operator+=(const Matrix& b) { return *this = *this + b; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
      os << (r ? ", [" : "[");
      for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << field_.to_string((*this)(r, c));
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  F field_;
  std::size_t rows_, cols_;
  std::vector<K> data_;
};

/// Kronecker product; (a ⊗ b)(i*b.rows + k, j*b.cols + l) = a(i,j) b(k,l).
template <class F>
Matrix<F> kron(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

template <class F>
Vec<F> kron(const Vec<F>& a, const Vec<F>& b) {
  Vec<F> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

template <class F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
  assert(a.rows() == b.rows());
  Matrix<F> out(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
  assert(a.cols() == b.cols());
  Matrix<F> out(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) out(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r) out(a.rows() + r, c) = b(r, c);
  }
  return out;
}

/// sum_i x[i] * mats[i], a rows × cols matrix.
template <class F>
Matrix<F> linear_combination(const F& field, std::size_t rows, std::size_t cols, const std::vector<Matrix<F>>& mats,
                             const Vec<F>& x) {
  assert(mats.size() == x.size());
  Matrix<F> out(field, rows, cols);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!is_zero(x[i])) out += mats[i].scaled(x[i]);
  return out;
}

template <class F>
struct Echelon {
  Matrix<F> form;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Unique reduced row-echelon form by Gauss-Jordan elimination.
template <class F>
Echelon<F> rref(Matrix<F> m) {
  using K = typename F::value_type;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = col; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    K inv = m.field().one() / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      K factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (is_zero(m(row, c))) continue;
        K delta = factor * m(row, c);
        m(r, c) -= delta;
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank();
}

template <class F>
bool is_invertible(const Matrix<F>& m) {
  return m.square() && rank(m) == m.rows();
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (!m.square()) return std::nullopt;
  auto e = rref(hstack(m, Matrix<F>::identity(m.field(), m.rows())));
  if (e.rank() < m.rows() || (m.rows() > 0 && e.pivots[m.rows() - 1] >= m.rows())) return std::nullopt;
  Matrix<F> inv(m.field(), m.rows(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.rows(); ++c) inv(r, c) = e.form(r, m.rows() + c);
  return inv;
}

/// A subspace of field^ambient, stored as the nonzero rows of its reduced
/// echelon form. Equality of subspaces is equality of this representation.
template <class F>
class Basis {
 public:
  Basis(const F& field, std::size_t ambient) : echelon_(field, 0, ambient), ambient_(ambient) {}

  /// Span of the rows of m.
  static Basis row_span(const Matrix<F>& m) {
    auto e = rref(m);
    Basis b(m.field(), m.cols());
    b.echelon_ = Matrix<F>(m.field(), e.rank(), m.cols());
    for (std::size_t r = 0; r < e.rank(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) b.echelon_(r, c) = e.form(r, c);
    b.pivots_ = std::move(e.pivots);
    return b;
  }
  static Basis span(const F& field, std::size_t ambient, const std::vector<Vec<F>>& vectors) {
    return row_span(Matrix<F>::from_rows(field, ambient, vectors));
  }
  static Basis column_span(const Matrix<F>& m) { return row_span(m.transpose()); }
  static Basis full(const F& field, std::size_t n) { return row_span(Matrix<F>::identity(field, n)); }

  const F& field() const { return echelon_.field(); }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return pivots_.size(); }
  bool empty() const { return pivots_.empty(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Basis vectors as the rows of a dim × ambient matrix.
  const Matrix<F>& rows() const { return echelon_; }
  Vec<F> vector(std::size_t i) const { return echelon_.row(i); }
  std::vector<Vec<F>> vectors() const {
    std::vector<Vec<F>> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(vector(i));
    return out;
  }

  /// Coordinates of v against the echelon basis, or nullopt when v is outside.
  std::optional<Vec<F>> coordinates(const Vec<F>& v) const {
    assert(v.size() == ambient_);
    Vec<F> coords;
    coords.reserve(dim());
    Vec<F> residual = v;
    for (std::size_t i = 0; i < dim(); ++i) {
      typename F::value_type c = residual[pivots_[i]];
      coords.push_back(c);
      if (is_zero(c)) continue;
      for (std::size_t j = 0; j < ambient_; ++j) {
        if (is_zero(echelon_(i, j))) continue;
        typename F::value_type d = c * echelon_(i, j);
        residual[j] -= d;
      }
    }
    if (!is_zero_vec<F>(residual)) return std::nullopt;
    return coords;
  }

  bool contains(const Vec<F>& v) const { return coordinates(v).has_value(); }
  bool contains(const Basis& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.vector(i))) return false;
    return true;
  }

  /// Linear combination of the basis vectors.
  Vec<F> combine(const Vec<F>& coords) const {
    assert(coords.size() == dim());
    return echelon_.transpose() * coords;
  }

  friend bool operator==(const Basis& a, const Basis& b) {
    return a.ambient_ == b.ambient_ && a.echelon_ == b.echelon_;
  }

 private:
  Matrix<F> echelon_;
  std::vector<std::size_t> pivots_;
  std::size_t ambient_;
};

/// Null space {x : m x = 0}.
template <class F>
Basis<F> kernel_basis(const Matrix<F>& m) {
  const F& field = m.field();
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec<F>> vectors;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v = unit_vec(field, m.cols(), free);
    for (std::size_t r = 0; r < e.rank(); ++r) v[e.pivots[r]] = -e.form(r, free);
    vectors.push_back(std::move(v));
  }
  return Basis<F>::span(field, m.cols(), vectors);
}

/// Some x with a x = b, if one exists.
template <class F>
std::optional<Vec<F>> solve(const Matrix<F>& a, const Vec<F>& b) {
  assert(a.rows() == b.size());
  Matrix<F> rhs(a.field(), b.size(), 1);
  rhs.set_col(0, b);
  auto e = rref(hstack(a, rhs));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vec<F> x = zero_vec(a.field(), a.cols());
  for (std::size_t r = 0; r < e.rank(); ++r) x[e.pivots[r]] = e.form(r, a.cols());
  return x;
}

template <class F>
struct SubspaceRelations {
  Basis<F> sum;
  Basis<F> intersection;
  bool equal;
  bool contains;  // U ⊇ V
};

/// Sum and intersection by the Zassenhaus construction: row-reduce
/// [[U, U], [V, 0]]; the rows with zero left half carry U ∩ V on the right.
template <class F>
SubspaceRelations<F> subspace_ops(const Basis<F>& u, const Basis<F>& v) {
  assert(u.ambient_dim() == v.ambient_dim());
  const F& field = u.field();
  std::size_t n = u.ambient_dim();
  Matrix<F> block(field, u.dim() + v.dim(), 2 * n);
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) block(i, j) = block(i, n + j) = u.rows()(i, j);
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) block(u.dim() + i, j) = v.rows()(i, j);
  auto e = rref(block);
  std::vector<Vec<F>> sum_rows, meet_rows;
  for (std::size_t r = 0; r < e.rank(); ++r) {
    Vec<F> row = e.form.row(r);
    if (e.pivots[r] < n)
      sum_rows.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
    else
      meet_rows.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(n), row.end());
  }
  return {Basis<F>::span(field, n, sum_rows), Basis<F>::span(field, n, meet_rows), u == v, u.contains(v)};
}

template <class F>
struct QuotientMaps {
  Matrix<F> projection;  // quotient_dim × ambient
  Matrix<F> section;     // ambient × quotient_dim, standard non-pivot coordinates
  std::size_t quotient_dim;
};

/// Projection onto field^ambient / U with the non-pivot standard coordinates
/// of U's echelon form as the quotient basis.
template <class F>
QuotientMaps<F> quotient_structure(std::size_t ambient, const Basis<F>& u) {
  assert(u.ambient_dim() == ambient);
  const F& field = u.field();
  std::vector<long> slot(ambient, -1);
  std::vector<long> pivot_row(ambient, -1);
  for (std::size_t r = 0; r < u.dim(); ++r) pivot_row[u.pivots()[r]] = static_cast<long>(r);
  std::size_t q = 0;
  for (std::size_t j = 0; j < ambient; ++j)
    if (pivot_row[j] < 0) slot[j] = static_cast<long>(q++);
  Matrix<F> projection(field, q, ambient), section(field, ambient, q);
  for (std::size_t j = 0; j < ambient; ++j) {
    if (slot[j] >= 0) {
      projection(static_cast<std::size_t>(slot[j]), j) = field.one();
      section(j, static_cast<std::size_t>(slot[j])) = field.one();
    } else {
      // e_j ≡ e_j - row = -(non-pivot part of the row) modulo U
      auto r = static_cast<std::size_t>(pivot_row[j]);
      for (std::size_t k = 0; k < ambient; ++k)
        if (slot[k] >= 0) projection(static_cast<std::size_t>(slot[k]), j) = -u.rows()(r, k);
    }
  }
  return {std::move(projection), std::move(section), q};
}

/// Number of subspaces of GF(q)^n (sum of Gaussian binomials), saturating.
inline std::uint64_t subspace_count(std::uint64_t q, std::size_t n) {
  constexpr std::uint64_t cap = std::uint64_t{1} << 62;
  // [n choose k]_q via the recurrence [n,k] = [n-1,k-1] + q^k [n-1,k]
  std::vector<std::uint64_t> row{1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<std::uint64_t> next(m + 1, 0);
    std::uint64_t qk = 1;
    for (std::size_t k = 0; k <= m; ++k) {
      std::uint64_t a = k > 0 ? row[k - 1] : 0;
      std::uint64_t b = k < m ? row[k] : 0;
      long double term = static_cast<long double>(qk) * static_cast<long double>(b) + static_cast<long double>(a);
      next[k] = term >= static_cast<long double>(cap) ? cap : static_cast<std::uint64_t>(term);
      qk = qk >= cap / q ? cap : qk * q;
    }
    row = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto x : row) total = total >= cap - x ? cap : total + x;
  return total;
}

}  // namespace morita
