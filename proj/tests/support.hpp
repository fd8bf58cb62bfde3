// Shared fixtures, brute-force oracles and random generators for the tests.
//
// The oracles deliberately avoid the library's linear algebra: they work on
// plain integers mod p and enumerate everything, so they only scale to tiny
// instances.
#pragma once

#include <gtest/gtest.h>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "morita/equivalence.hpp"
#include "morita/graded.hpp"

namespace fx {

using namespace morita;
using GF = PrimeField;
using QF = RationalField;

template <class F>
Matrix<F> mat(const F& f, std::size_t rows, std::size_t cols, std::initializer_list<long long> entries) {
  Matrix<F> m(f, rows, cols);
  std::size_t k = 0;
  for (long long x : entries) {
    m(k / cols, k % cols) = f.from_int(x);
    ++k;
  }
  return m;
}

template <class F>
Vec<F> vec(const F& f, std::initializer_list<long long> entries) {
  Vec<F> v;
  for (long long x : entries) v.push_back(f.from_int(x));
  return v;
}

template <class F>
AlgebraRef<F> t2(const F& f) {
  return std::make_shared<const Algebra<F>>(upper_triangular_algebra(f, 2));
}

template <class F>
AlgebraRef<F> m2(const F& f) {
  return std::make_shared<const Algebra<F>>(matrix_algebra(f, 2));
}

template <class F>
AlgebraRef<F> ground(const F& f) {
  return std::make_shared<const Algebra<F>>(ground_algebra(f));
}

/// k[t]/t² with basis (1, t).
template <class F>
AlgebraRef<F> dual_numbers(const F& f) {
  Vec<F> one = vec(f, {1, 0}), t = vec(f, {0, 1}), zero = vec(f, {0, 0});
  return std::make_shared<const Algebra<F>>(f, std::vector<std::vector<Vec<F>>>{{one, t}, {t, zero}}, one,
                                            std::vector<std::string>{"1", "t"});
}

// T2 modules in the basis (e11, e12, e22).
template <class F>
LeftModule<F> s1(const AlgebraRef<F>& r) {
  const F& f = r->field();
  return {r, 1, {mat(f, 1, 1, {1}), mat(f, 1, 1, {0}), mat(f, 1, 1, {0})}};
}

template <class F>
LeftModule<F> s2(const AlgebraRef<F>& r) {
  const F& f = r->field();
  return {r, 1, {mat(f, 1, 1, {0}), mat(f, 1, 1, {0}), mat(f, 1, 1, {1})}};
}

/// Re22 = span{e12, e22}: the projective cover of S2.
template <class F>
LeftModule<F> p2(const AlgebraRef<F>& r) {
  const F& f = r->field();
  return {r, 2, {mat(f, 2, 2, {1, 0, 0, 0}), mat(f, 2, 2, {0, 1, 0, 0}), mat(f, 2, 2, {0, 0, 0, 1})}};
}

template <class F>
Ideal<F> t2_ideal(const AlgebraRef<F>& r) {
  const F& f = r->field();
  return {r, Basis<F>::span(f, 3, {vec(f, {0, 1, 0}), vec(f, {0, 0, 1})})};
}

template <class F>
MoritaContext<F> t2_corner(const AlgebraRef<F>& r) {
  const F& f = r->field();
  return corner_context(r, vec(f, {0, 0, 1}));
}

template <class F>
MoritaContext<F> m2_corner(const AlgebraRef<F>& r) {
  const F& f = r->field();
  return corner_context(r, vec(f, {1, 0, 0, 0}));
}

/// (D, D, D, D, t·mult, t·mult) over the dual numbers: I = (t) with I² = 0.
template <class F>
MoritaContext<F> nilpotent_context(const AlgebraRef<F>& d) {
  const F& f = d->field();
  Matrix<F> pairing(f, 2, 4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      pairing.set_col(a * 2 + b, d->multiply(vec(f, {0, 1}), d->basis_product(a, b)));
  return make_context(d, d, regular_bimodule(d), regular_bimodule(d), pairing, pairing);
}

/// (R, S, M, N, 0, 0) with M = R ⊗ S-free of rank 1 over the ground field.
template <class F>
MoritaContext<F> zero_context(const AlgebraRef<F>& r) {
  const F& f = r->field();
  auto k = std::make_shared<const Algebra<F>>(ground_algebra(f));
  Bimodule<F> m = with_trivial_right(regular_left(r), k);
  Bimodule<F> n{k, r, r->dim(), {Matrix<F>::identity(f, r->dim())}, regular_right(r).action};
  std::size_t d = r->dim();
  return make_context(r, k, m, n, Matrix<F>(f, d, d * d), Matrix<F>(f, 1, d * d));
}

// ---- generators ----

template <class F>
Matrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix<F> m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = f.sample(rng);
  return m;
}

/// Random matrix of rank at most `max_rank`, as a product of two thin ones.
template <class F>
Matrix<F> random_low_rank(const F& f, std::size_t rows, std::size_t cols, std::size_t max_rank, Rng& rng) {
  return random_matrix(f, rows, max_rank, rng) * random_matrix(f, max_rank, cols, rng);
}

template <class F>
Matrix<F> random_invertible(const F& f, std::size_t n, Rng& rng) {
  while (true) {
    Matrix<F> m = random_matrix(f, n, n, rng);
    if (is_invertible(m)) return m;
  }
}

template <class F>
Basis<F> random_subspace(const F& f, std::size_t n, Rng& rng) {
  std::size_t k = draw(rng, n + 1);
  return Basis<F>::row_span(random_matrix(f, k, n, rng));
}

/// A catalog member, or the sum of two, in a scrambled basis.
template <class F>
LeftModule<F> random_module(const Catalog<F>& cat, Rng& rng, std::size_t max_dim = 4) {
  LeftModule<F> m = cat.modules[draw(rng, cat.modules.size())];
  if (draw(rng, 2) == 0) {
    const LeftModule<F>& other = cat.modules[draw(rng, cat.modules.size())];
    if (m.dim + other.dim <= max_dim) m = direct_sum(m, other);
  }
  if (m.dim == 0) return m;
  return change_basis(m, random_invertible(m.field(), m.dim, rng));
}

template <class F>
Matrix<F> random_hom(const LeftModule<F>& x, const LeftModule<F>& y, Rng& rng) {
  HomSpace<F> h = hom_space(x, y);
  Vec<F> coords;
  for (std::size_t t = 0; t < h.dim(); ++t) coords.push_back(x.field().sample(rng));
  return h.dim() == 0 ? Matrix<F>(x.field(), y.dim, x.dim) : h.combine(coords);
}

/// The same context written in new bases pm of M and pn of N.
template <class F>
MoritaContext<F> rebased_context(const MoritaContext<F>& g, const Matrix<F>& pm, const Matrix<F>& pn) {
  Bimodule<F> m = g.m, n = g.n;
  Matrix<F> pmi = *inverse(pm), pni = *inverse(pn);
  for (auto& a : m.left_action) a = pm * a * pmi;
  for (auto& a : m.right_action) a = pm * a * pmi;
  for (auto& a : n.left_action) a = pn * a * pni;
  for (auto& a : n.right_action) a = pn * a * pni;
  return make_context(g.r, g.s, m, n, g.phi_raw() * kron(pmi, pni), g.psi_raw() * kron(pni, pmi));
}

/// All idempotents of a small algebra over GF(p), by enumeration.
inline std::vector<Vec<GF>> idempotents(const Algebra<GF>& a) {
  const std::uint32_t p = a.field().characteristic();
  std::vector<Vec<GF>> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < a.dim(); ++i) total *= p;
  for (std::size_t code = 0; code < total; ++code) {
    Vec<GF> e;
    for (std::size_t i = 0, c = code; i < a.dim(); ++i, c /= p) e.push_back(a.field().element(c % p));
    if (is_idempotent(a, e)) out.push_back(e);
  }
  return out;
}

/// Runs `body` on `count` seeds; a failure reports the seed that produced it.
inline void for_all_seeds(std::size_t count, std::uint64_t base, const std::function<void(Rng&)>& body) {
  for (std::size_t k = 0; k < count; ++k) {
    std::uint64_t seed = base + k;
    SCOPED_TRACE("seed " + std::to_string(seed));
    Rng rng(seed);
    body(rng);
    if (::testing::Test::HasFatalFailure()) return;
  }
}

// ---- brute-force oracles over GF(p) ----
namespace oracle {

/// Dense matrix of residues mod p.
struct IntMat {
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint32_t> a;
  std::uint32_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
  bool operator==(const IntMat&) const = default;
  bool operator<(const IntMat& o) const { return a < o.a; }
};

inline IntMat zeros(std::size_t r, std::size_t c) { return {r, c, std::vector<std::uint32_t>(r * c, 0)}; }

inline IntMat from(const Matrix<GF>& m) {
  IntMat out = zeros(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = m(r, c).value();
  return out;
}

inline IntMat mul(const IntMat& x, const IntMat& y, std::uint32_t p) {
  IntMat out = zeros(x.rows, y.cols);
  for (std::size_t r = 0; r < x.rows; ++r)
    for (std::size_t k = 0; k < x.cols; ++k)
      for (std::size_t c = 0; c < y.cols; ++c) out.at(r, c) = (out.at(r, c) + x.at(r, k) * y.at(k, c)) % p;
  return out;
}

inline IntMat transpose(const IntMat& x) {
  IntMat out = zeros(x.cols, x.rows);
  for (std::size_t r = 0; r < x.rows; ++r)
    for (std::size_t c = 0; c < x.cols; ++c) out.at(c, r) = x.at(r, c);
  return out;
}

/// The matrix whose entries are the base-p digits of `code`.
inline IntMat decode(std::uint64_t code, std::size_t rows, std::size_t cols, std::uint32_t p) {
  IntMat m = zeros(rows, cols);
  for (auto& x : m.a) {
    x = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return m;
}

inline std::uint64_t power(std::uint64_t b, std::size_t e) {
  std::uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

/// log_p(count), asserting count is a power of p.
inline std::size_t log_p(std::uint64_t count, std::uint32_t p) {
  std::size_t d = 0;
  while (count > 1) {
    EXPECT_EQ(count % p, 0u) << "solution count is not a power of p";
    count /= p;
    ++d;
  }
  return d;
}

inline std::vector<IntMat> actions(const LeftModule<GF>& m) {
  std::vector<IntMat> out;
  for (const auto& a : m.action) out.push_back(from(a));
  return out;
}

/// dim Hom_R(M, N) by counting every linear map M → N.
inline std::size_t hom_dim(const LeftModule<GF>& m, const LeftModule<GF>& n) {
  const std::uint32_t p = m.field().characteristic();
  auto am = actions(m), an = actions(n);
  std::uint64_t total = power(p, m.dim * n.dim), count = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    IntMat f = decode(code, n.dim, m.dim, p);
    bool ok = true;
    for (std::size_t i = 0; ok && i < am.size(); ++i) ok = mul(f, am[i], p) == mul(an[i], f, p);
    count += ok ? 1 : 0;
  }
  return log_p(count, p);
}

/// dim M ⊗_R N as the dimension of its dual: bilinear forms B with
/// B(m·r, n) = B(m, r·n), i.e. Rᵢᵀ B = B Lᵢ.
inline std::size_t tensor_dim(std::size_t dm, const std::vector<Matrix<GF>>& m_right, std::size_t dn,
                              const std::vector<Matrix<GF>>& n_left, std::uint32_t p) {
  std::vector<IntMat> rt, l;
  for (const auto& a : m_right) rt.push_back(transpose(from(a)));
  for (const auto& a : n_left) l.push_back(from(a));
  std::uint64_t total = power(p, dm * dn), count = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    IntMat b = decode(code, dm, dn, p);
    bool ok = true;
    for (std::size_t i = 0; ok && i < rt.size(); ++i) ok = mul(rt[i], b, p) == mul(b, l[i], p);
    count += ok ? 1 : 0;
  }
  return log_p(count, p);
}

inline std::vector<std::vector<std::uint32_t>> all_vectors(std::size_t n, std::uint32_t p) {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint64_t code = 0; code < power(p, n); ++code) out.push_back(decode(code, n, 1, p).a);
  return out;
}

inline std::vector<std::uint32_t> apply(const IntMat& a, const std::vector<std::uint32_t>& x, std::uint32_t p) {
  return mul(a, IntMat{x.size(), 1, x}, p).a;
}

/// Number of submodules of M over GF(2): every subset of nonzero vectors is
/// tested for closure under addition and the action.
inline std::size_t submodule_count_gf2(const LeftModule<GF>& m) {
  auto vs = all_vectors(m.dim, 2);
  auto acts = actions(m);
  auto index = [&](const std::vector<std::uint32_t>& v) {
    std::size_t k = 0;
    for (std::size_t i = v.size(); i-- > 0;) k = k * 2 + v[i];
    return k;
  };
  const std::size_t nonzero = vs.size() - 1;
  std::size_t count = 0;
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << nonzero); ++subset) {
    auto member = [&](std::size_t k) { return k == 0 || ((subset >> (k - 1)) & 1); };
    bool ok = true;
    for (std::size_t a = 1; ok && a < vs.size(); ++a) {
      if (!member(a)) continue;
      for (std::size_t b = 1; ok && b < vs.size(); ++b)
        if (member(b)) ok = member(a ^ b);
      for (std::size_t i = 0; ok && i < acts.size(); ++i) ok = member(index(apply(acts[i], vs[a], 2)));
    }
    count += ok ? 1 : 0;
  }
  return count;
}

/// |{x : v·x = 0 for every v in the ideal}| as a dimension.
inline std::size_t annihilator_dim(const LeftModule<GF>& m, const std::vector<Vec<GF>>& ideal_basis) {
  const std::uint32_t p = m.field().characteristic();
  std::vector<IntMat> acts;
  for (const auto& v : ideal_basis) acts.push_back(from(m.act(v)));
  std::uint64_t count = 0;
  for (const auto& x : all_vectors(m.dim, p)) {
    bool killed = true;
    for (const auto& a : acts)
      for (auto y : apply(a, x, p)) killed = killed && y == 0;
    count += killed ? 1 : 0;
  }
  return log_p(count, p);
}

/// dim I·M: the additive closure of all products v·x.
inline std::size_t image_dim(const LeftModule<GF>& m, const std::vector<Vec<GF>>& ideal_basis) {
  const std::uint32_t p = m.field().characteristic();
  std::set<std::vector<std::uint32_t>> span{std::vector<std::uint32_t>(m.dim, 0)};
  std::vector<std::vector<std::uint32_t>> gens;
  for (const auto& v : ideal_basis) {
    IntMat a = from(m.act(v));
    for (const auto& x : all_vectors(m.dim, p)) gens.push_back(apply(a, x, p));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<std::uint32_t>> current(span.begin(), span.end());
    for (const auto& s : current)
      for (const auto& g : gens) {
        std::vector<std::uint32_t> t(m.dim);
        for (std::size_t k = 0; k < m.dim; ++k) t[k] = (s[k] + g[k]) % p;
        grew = span.insert(t).second || grew;
      }
  }
  return log_p(span.size(), p);
}

/// Invertible d×d matrices over GF(p), with inverses, by enumeration.
inline std::vector<std::pair<IntMat, IntMat>> general_linear(std::size_t d, std::uint32_t p) {
  std::vector<IntMat> all;
  for (std::uint64_t code = 0; code < power(p, d * d); ++code) all.push_back(decode(code, d, d, p));
  IntMat id = zeros(d, d);
  for (std::size_t i = 0; i < d; ++i) id.at(i, i) = 1;
  std::vector<std::pair<IntMat, IntMat>> out;
  for (const auto& g : all)
    for (const auto& h : all)
      if (mul(g, h, p) == id) {
        out.emplace_back(g, h);
        break;
      }
  return out;
}

/// Isomorphism classes of d-dimensional modules over a small algebra over
/// GF(p): enumerate every action tuple satisfying the module laws, then
/// count orbits under conjugation by the invertible matrices in `group`.
/// `free` lists the basis elements whose matrices are enumerated; the one
/// remaining element `solved` is fixed by unit·x = x, which requires its
/// unit coefficient to be 1 and all others to be 0 or 1 (true for T2, M2 and
/// k[t]/t² bases used here).
inline std::size_t module_classes(const Algebra<GF>& a, std::size_t d,
                                  const std::vector<std::pair<IntMat, IntMat>>& group,
                                  const std::vector<std::size_t>* degrees = nullptr,
                                  const std::vector<std::size_t>* alg_degrees = nullptr) {
  const std::uint32_t p = a.field().characteristic();
  const std::size_t n = a.dim();
  std::size_t solved = n;
  for (std::size_t i = 0; i < n; ++i)
    if (a.unit()[i].value() == 1) solved = i;
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i)
    if (i != solved) free.push_back(i);
  IntMat id = zeros(d, d);
  for (std::size_t i = 0; i < d; ++i) id.at(i, i) = 1;

  // structure constants c[i][j][k]
  std::vector<std::vector<std::vector<std::uint32_t>>> c(n, std::vector<std::vector<std::uint32_t>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& x : a.basis_product(i, j)) c[i][j].push_back(x.value());

  auto homogeneous = [&](const IntMat& m, std::size_t deg) {
    if (!degrees) return true;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t col = 0; col < d; ++col)
        if (m.at(r, col) != 0 && (*degrees)[r] != ((*degrees)[col] + deg) % 2) return false;
    return true;
  };

  std::set<std::vector<IntMat>> valid;
  const std::uint64_t per = power(p, d * d);
  const std::uint64_t total = power(per, free.size());
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<IntMat> act(n);
    std::uint64_t rest = code;
    IntMat last = id;
    for (std::size_t i : free) {
      act[i] = decode(rest % per, d, d, p);
      rest /= per;
      for (std::size_t k = 0; k < d * d; ++k)
        last.a[k] = (last.a[k] + (p - a.unit()[i].value()) * act[i].a[k]) % p;
    }
    act[solved] = last;
    bool ok = true;
    for (std::size_t i = 0; ok && i < n; ++i)
      ok = homogeneous(act[i], alg_degrees ? (*alg_degrees)[i] : 0);
    for (std::size_t i = 0; ok && i < n; ++i)
      for (std::size_t j = 0; ok && j < n; ++j) {
        IntMat lhs = mul(act[i], act[j], p);
        IntMat rhs = zeros(d, d);
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t e = 0; e < d * d; ++e) rhs.a[e] = (rhs.a[e] + c[i][j][k] * act[k].a[e]) % p;
        ok = lhs == rhs;
      }
    if (ok) valid.insert(act);
  }
  std::set<std::vector<IntMat>> seen;
  std::size_t classes = 0;
  for (const auto& act : valid) {
    if (seen.count(act)) continue;
    ++classes;
    for (const auto& [g, h] : group) {
      std::vector<IntMat> conj;
      for (const auto& m : act) conj.push_back(mul(mul(g, m, p), h, p));
      seen.insert(conj);
    }
  }
  return classes;
}

/// Graded classes over C2: degree patterns are sorted (zeros first), and the
/// group is the block-diagonal GL of each pattern.
inline std::size_t graded_module_classes_c2(const Algebra<GF>& a, const std::vector<std::size_t>& alg_degrees,
                                            std::size_t d) {
  std::size_t total = 0;
  for (std::size_t ones = 0; ones <= d; ++ones) {
    std::vector<std::size_t> degrees(d, 0);
    for (std::size_t k = d - ones; k < d; ++k) degrees[k] = 1;
    std::vector<std::pair<IntMat, IntMat>> group;
    for (const auto& [g, h] : general_linear(d, 2)) {
      bool block = true;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          if (degrees[r] != degrees[c] && (g.at(r, c) != 0 || h.at(r, c) != 0)) block = false;
      if (block) group.emplace_back(g, h);
    }
    total += module_classes(a, d, group, &degrees, &alg_degrees);
  }
  return total;
}

}  // namespace oracle
}  // namespace fx
