#pragma once

// Morita contexts (R, S, M, N, φ, ψ) with φ: M⊗_S N → R and ψ: N⊗_R M → S
// stored as matrices on the computed tensor quotients, plus the natural maps
// η, ρ, η′, ρ′ attached to a context.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morita/isomorphism.hpp"
#include "morita/tensor.hpp"

namespace morita {

template <class F>
struct MoritaContext {
  AlgebraRef<F> r;
  AlgebraRef<F> s;
  Bimodule<F> m;  // R-S
  Bimodule<F> n;  // S-R
  TensorSpace<F> mn;  // M ⊗_S N
  TensorSpace<F> nm;  // N ⊗_R M
  Matrix<F> phi;  // dim R × dim(M ⊗_S N)
  Matrix<F> psi;  // dim S × dim(N ⊗_R M)

  const F& field() const { return r->field(); }

  /// φ on the raw product basis: column a·dim N + b is φ(m_a ⊗ n_b).
  Matrix<F> phi_raw() const { return phi * mn.projection(); }
  /// ψ on the raw product basis: column b·dim M + a is ψ(n_b ⊗ m_a).
  Matrix<F> psi_raw() const { return psi * nm.projection(); }

  Vec<F> phi_of(const Vec<F>& mv, const Vec<F>& nv) const { return phi * mn.pure(mv, nv); }
  Vec<F> psi_of(const Vec<F>& nv, const Vec<F>& mv) const { return psi * nm.pure(nv, mv); }
};

/// Builds a context from φ, ψ given on the raw product bases. Throws when
/// either map does not vanish on the balancing relations.
template <class F>
MoritaContext<F> make_context(AlgebraRef<F> r, AlgebraRef<F> s, Bimodule<F> m, Bimodule<F> n, const Matrix<F>& phi_raw,
                              const Matrix<F>& psi_raw) {
  if (!same_algebra(m.left_algebra, r) || !same_algebra(m.right_algebra, s))
    throw invalid_input("context: M must be an R-S bimodule");
  if (!same_algebra(n.left_algebra, s) || !same_algebra(n.right_algebra, r))
    throw invalid_input("context: N must be an S-R bimodule");
  const F& field = r->field();
  TensorSpace<F> mn = tensor_space(field, m.dim, m.right_action, n.dim, n.left_action);
  TensorSpace<F> nm = tensor_space(field, n.dim, n.right_action, m.dim, m.left_action);
  if (phi_raw.rows() != r->dim() || phi_raw.cols() != m.dim * n.dim)
    throw invalid_input("context: phi must be " + std::to_string(r->dim()) + "x" + std::to_string(m.dim * n.dim));
  if (psi_raw.rows() != s->dim() || psi_raw.cols() != n.dim * m.dim)
    throw invalid_input("context: psi must be " + std::to_string(s->dim()) + "x" + std::to_string(n.dim * m.dim));
  Matrix<F> phi = phi_raw * mn.section();
  Matrix<F> psi = psi_raw * nm.section();
  if (phi * mn.projection() != phi_raw) throw invalid_input("context: phi is not balanced over S");
  if (psi * nm.projection() != psi_raw) throw invalid_input("context: psi is not balanced over R");
  return {std::move(r), std::move(s), std::move(m), std::move(n), std::move(mn), std::move(nm), std::move(phi),
          std::move(psi)};
}

template <class F>
ValidationReport validate_context(const MoritaContext<F>& g) {
  if (g.phi.rows() != g.r->dim() || g.phi.cols() != g.mn.dim())
    throw invalid_input("context: phi does not match the computed tensor space M⊗N");
  if (g.psi.rows() != g.s->dim() || g.psi.cols() != g.nm.dim())
    throw invalid_input("context: psi does not match the computed tensor space N⊗M");
  ValidationReport report;
  report.merge(validate_module(g.m), "M: ");
  report.merge(validate_module(g.n), "N: ");
  const F& field = g.field();
  const auto& R = *g.r;
  const auto& S = *g.s;
  Matrix<F> id_m = Matrix<F>::identity(field, g.m.dim), id_n = Matrix<F>::identity(field, g.n.dim);
  for (std::size_t i = 0; i < R.dim(); ++i) {
    if (g.phi * g.mn.descend(kron(g.m.left_action[i], id_n)) != R.left_mult(i) * g.phi)
      report.fail("phi is not left R-linear at " + R.label(i));
    if (g.phi * g.mn.descend(kron(id_m, g.n.right_action[i])) != R.right_mult(i) * g.phi)
      report.fail("phi is not right R-linear at " + R.label(i));
  }
  for (std::size_t i = 0; i < S.dim(); ++i) {
    if (g.psi * g.nm.descend(kron(g.n.left_action[i], id_m)) != S.left_mult(i) * g.psi)
      report.fail("psi is not left S-linear at " + S.label(i));
    if (g.psi * g.nm.descend(kron(id_n, g.m.right_action[i])) != S.right_mult(i) * g.psi)
      report.fail("psi is not right S-linear at " + S.label(i));
  }
  Matrix<F> phi_raw = g.phi_raw(), psi_raw = g.psi_raw();
  const std::size_t dm = g.m.dim, dn = g.n.dim;
  // φ(m⊗n)m′ = mψ(n⊗m′)
  for (std::size_t a = 0; a < dm; ++a)
    for (std::size_t b = 0; b < dn; ++b)
      for (std::size_t c = 0; c < dm; ++c)
        if (g.m.act_left(phi_raw.col(a * dn + b)).col(c) != g.m.act_right(psi_raw.col(b * dm + c)).col(a))
          report.fail("associativity phi(m" + std::to_string(a) + "⊗n" + std::to_string(b) + ")m" +
                      std::to_string(c) + " = m" + std::to_string(a) + "psi(n" + std::to_string(b) + "⊗m" +
                      std::to_string(c) + ")");
  // ψ(n⊗m)n′ = nφ(m⊗n′)
  for (std::size_t b = 0; b < dn; ++b)
    for (std::size_t a = 0; a < dm; ++a)
      for (std::size_t c = 0; c < dn; ++c)
        if (g.n.act_left(psi_raw.col(b * dm + a)).col(c) != g.n.act_right(phi_raw.col(a * dn + c)).col(b))
          report.fail("associativity psi(n" + std::to_string(b) + "⊗m" + std::to_string(a) + ")n" +
                      std::to_string(c) + " = n" + std::to_string(b) + "phi(m" + std::to_string(a) + "⊗n" +
                      std::to_string(c) + ")");
  return report;
}

/// (R, R, R, R, mult, mult).
template <class F>
MoritaContext<F> identity_context(const AlgebraRef<F>& r) {
  const std::size_t d = r->dim();
  Matrix<F> mult(r->field(), d, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) mult.set_col(a * d + b, r->basis_product(a, b));
  return make_context(r, r, regular_bimodule(r), regular_bimodule(r), mult, mult);
}

/// Bases of eRe, Re and eR inside R used by a corner context.
template <class F>
struct CornerEmbedding {
  Frame<F> s, m, n;
  std::vector<std::size_t> s_degrees, m_degrees, n_degrees;  // empty when ungraded
};

/// (R, eRe, Re, eR, mult, mult) for an idempotent e. With coordinate
/// degrees given, the bases of eRe, Re, eR are chosen homogeneous.
template <class F>
std::pair<MoritaContext<F>, CornerEmbedding<F>> corner_context_embedded(
    const AlgebraRef<F>& r, const Vec<F>& e, const std::vector<std::size_t>* degrees = nullptr,
    std::size_t group_order = 1) {
  const auto& R = *r;
  const F& field = R.field();
  if (e.size() != R.dim() || !is_idempotent(R, e)) throw invalid_input("corner_context: e is not idempotent");
  Matrix<F> left_e = R.left_mult_of(e), right_e = R.right_mult_of(e);
  Basis<F> re = Basis<F>::column_span(right_e);
  Basis<F> er = Basis<F>::column_span(left_e);
  Basis<F> ere = Basis<F>::column_span(left_e * right_e);
  auto frame_of = [&](const Basis<F>& b, std::vector<std::size_t>& deg) {
    if (!degrees) return Frame<F>::of(b);
    auto gf = homogeneous_frame(b, *degrees, group_order);
    deg = gf.degrees;
    return gf.frame;
  };
  CornerEmbedding<F> emb{Frame<F>(Matrix<F>(field, R.dim(), 0)), Frame<F>(Matrix<F>(field, R.dim(), 0)),
                         Frame<F>(Matrix<F>(field, R.dim(), 0)), {}, {}, {}};
  emb.s = frame_of(ere, emb.s_degrees);
  emb.m = frame_of(re, emb.m_degrees);
  emb.n = frame_of(er, emb.n_degrees);
  const std::size_t ds = emb.s.dim(), dm = emb.m.dim(), dn = emb.n.dim();
  auto s_vec = [&](std::size_t k) { return emb.s.vectors().col(k); };

  std::vector<std::vector<Vec<F>>> mul(ds, std::vector<Vec<F>>(ds));
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < ds; ++k) {
    for (std::size_t l = 0; l < ds; ++l) mul[k][l] = emb.s.coordinates(R.multiply(s_vec(k), s_vec(l)));
    Vec<F> v = s_vec(k);
    std::size_t nonzero = 0, at = 0;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!is_zero(v[j])) ++nonzero, at = j;
    labels.push_back(nonzero == 1 && v[at] == field.one() ? R.label(at) : "s" + std::to_string(k));
  }
  auto s = std::make_shared<const Algebra<F>>(field, std::move(mul), emb.s.coordinates(e), std::move(labels));

  Bimodule<F> m{r, s, dm, {}, {}}, n{s, r, dn, {}, {}};
  for (std::size_t i = 0; i < R.dim(); ++i) {
    m.left_action.push_back(emb.m.left_inverse() * R.left_mult(i) * emb.m.vectors());
    n.right_action.push_back(emb.n.left_inverse() * R.right_mult(i) * emb.n.vectors());
  }
  for (std::size_t k = 0; k < ds; ++k) {
    m.right_action.push_back(emb.m.left_inverse() * R.right_mult_of(s_vec(k)) * emb.m.vectors());
    n.left_action.push_back(emb.n.left_inverse() * R.left_mult_of(s_vec(k)) * emb.n.vectors());
  }
  Matrix<F> phi_raw(field, R.dim(), dm * dn), psi_raw(field, ds, dn * dm);
  for (std::size_t a = 0; a < dm; ++a)
    for (std::size_t b = 0; b < dn; ++b) {
      phi_raw.set_col(a * dn + b, R.multiply(emb.m.vectors().col(a), emb.n.vectors().col(b)));
      psi_raw.set_col(b * dm + a, emb.s.coordinates(R.multiply(emb.n.vectors().col(b), emb.m.vectors().col(a))));
    }
  return {make_context(r, s, std::move(m), std::move(n), phi_raw, psi_raw), std::move(emb)};
}

template <class F>
MoritaContext<F> corner_context(const AlgebraRef<F>& r, const Vec<F>& e) {
  return corner_context_embedded(r, e).first;
}

/// (S, R, N, M, ψ, φ).
template <class F>
MoritaContext<F> swap_context(const MoritaContext<F>& g) {
  return {g.s, g.r, g.n, g.m, g.nm, g.mn, g.psi, g.phi};
}

template <class F>
struct TraceIdeals {
  Ideal<F> i;  // Im φ ⊆ R
  Ideal<F> j;  // Im ψ ⊆ S
};

template <class F>
TraceIdeals<F> trace_ideals(const MoritaContext<F>& g) {
  Ideal<F> i{g.r, Basis<F>::column_span(g.phi)};
  Ideal<F> j{g.s, Basis<F>::column_span(g.psi)};
  if (!is_two_sided_stable(*g.r, i.basis) || !is_two_sided_stable(*g.s, j.basis))
    throw std::logic_error("trace ideal is not two-sided; the context is invalid");
  return {std::move(i), std::move(j)};
}

template <class F>
bool is_strict(const MoritaContext<F>& g) {
  auto t = trace_ideals(g);
  return t.i.is_whole() && t.j.is_whole();
}

// ---- the natural maps ----

/// A ⊗ (B ⊗ X) → X, a⊗b⊗x ↦ pairing(a⊗b)·x. For η take (A, B) = (M, N)
/// with φ; for ρ take (N, M) with ψ.
template <class F>
struct CounitMap {
  TensorModule<F> inner;  // B ⊗ X
  TensorModule<F> outer;  // A ⊗ (B ⊗ X)
  Matrix<F> map;          // dim X × dim outer
};

template <class F>
CounitMap<F> pairing_counit(const Bimodule<F>& a, const Bimodule<F>& b, const Matrix<F>& pairing_raw,
                            const LeftModule<F>& x) {
  const F& field = x.field();
  TensorModule<F> inner = tensor_over(b, x);
  TensorModule<F> outer = tensor_over(a, inner.module);
  const std::size_t da = a.dim, db = b.dim, dx = x.dim, dg = inner.module.dim;
  std::vector<Matrix<F>> acts;
  for (std::size_t p = 0; p < da * db; ++p) acts.push_back(x.act(pairing_raw.col(p)));
  Matrix<F> raw(field, dx, da * dg);
  const Matrix<F>& sec = inner.space.section();
  for (std::size_t ai = 0; ai < da; ++ai)
    for (std::size_t t = 0; t < dg; ++t) {
      Vec<F> col = zero_vec(field, dx);
      for (std::size_t bi = 0; bi < db; ++bi)
        for (std::size_t c = 0; c < dx; ++c) {
          const auto& coef = sec(bi * dx + c, t);
          if (is_zero(coef)) continue;
          const Matrix<F>& act = acts[ai * db + bi];
          for (std::size_t r = 0; r < dx; ++r) {
            if (is_zero(act(r, c))) continue;
            typename F::value_type term = coef * act(r, c);
            col[r] += term;
          }
        }
      raw.set_col(ai * dg + t, col);
    }
  Matrix<F> map = raw * outer.space.section();
  return {std::move(inner), std::move(outer), std::move(map)};
}

/// η(X): M⊗_S N⊗_R X → X.
template <class F>
CounitMap<F> eta_map(const MoritaContext<F>& g, const LeftModule<F>& x) {
  return pairing_counit(g.m, g.n, g.phi_raw(), x);
}

/// ρ(Y): N⊗_R M⊗_S Y → Y.
template <class F>
CounitMap<F> rho_map(const MoritaContext<F>& g, const LeftModule<F>& y) {
  return pairing_counit(g.n, g.m, g.psi_raw(), y);
}

/// A ⊗ (B ⊗ f) between two counit maps' domains.
template <class F>
Matrix<F> counit_domain_map(const CounitMap<F>& source, const CounitMap<F>& target, std::size_t a_dim,
                            std::size_t b_dim, const Matrix<F>& f) {
  const F& field = f.field();
  Matrix<F> inner = tensor_map(source.inner.space, target.inner.space, Matrix<F>::identity(field, b_dim), f);
  return tensor_map(source.outer.space, target.outer.space, Matrix<F>::identity(field, a_dim), inner);
}

/// X → Hom(B, Hom(A, X)), x ↦ (b ↦ (a ↦ pairing(a⊗b)·x)). For η′ take
/// (A, B) = (M, N) with φ; for ρ′ take (N, M) with ψ.
template <class F>
struct UnitMap {
  HomModule<F> inner;  // Hom(A, X)
  HomModule<F> outer;  // Hom(B, Hom(A, X))
  Matrix<F> map;       // dim outer × dim X
};

template <class F>
UnitMap<F> pairing_unit(const Bimodule<F>& a, const Bimodule<F>& b, const Matrix<F>& pairing_raw,
                        const LeftModule<F>& x) {
  const F& field = x.field();
  HomModule<F> inner = hom_module(a, x);
  HomModule<F> outer = hom_module(b, inner.module);
  const std::size_t da = a.dim, db = b.dim, dx = x.dim;
  std::vector<Matrix<F>> acts;
  for (std::size_t p = 0; p < da * db; ++p) acts.push_back(x.act(pairing_raw.col(p)));
  Matrix<F> map(field, outer.module.dim, dx);
  for (std::size_t c = 0; c < dx; ++c) {
    Matrix<F> over_b(field, inner.module.dim, db);
    for (std::size_t bi = 0; bi < db; ++bi) {
      Matrix<F> over_a(field, dx, da);
      for (std::size_t ai = 0; ai < da; ++ai) over_a.set_col(ai, acts[ai * db + bi].col(c));
      auto coords = inner.space.coordinates(over_a);
      if (!coords) throw std::logic_error("unit map: a ↦ pairing(a⊗b)x is not A-linear");
      over_b.set_col(bi, *coords);
    }
    auto coords = outer.space.coordinates(over_b);
    if (!coords) throw std::logic_error("unit map: b ↦ (…) is not B-linear");
    map.set_col(c, *coords);
  }
  return {std::move(inner), std::move(outer), std::move(map)};
}

/// η′(X): X → Hom_S(N, Hom_R(M, X)).
template <class F>
UnitMap<F> eta_prime_map(const MoritaContext<F>& g, const LeftModule<F>& x) {
  return pairing_unit(g.m, g.n, g.phi_raw(), x);
}

/// ρ′(Y): Y → Hom_R(M, Hom_S(N, Y)).
template <class F>
UnitMap<F> rho_prime_map(const MoritaContext<F>& g, const LeftModule<F>& y) {
  return pairing_unit(g.n, g.m, g.psi_raw(), y);
}

/// Hom(B, Hom(A, f)) between two unit maps' codomains.
template <class F>
Matrix<F> unit_codomain_map(const UnitMap<F>& source, const UnitMap<F>& target, const Matrix<F>& f) {
  Matrix<F> inner = postcompose(source.inner.space, target.inner.space, f);
  return postcompose(source.outer.space, target.outer.space, inner);
}

/// A ⊗ Hom(A, X) → X, a ⊗ f ↦ f(a).
template <class F>
struct EvaluationMap {
  HomModule<F> hom;
  TensorModule<F> tensor;
  Matrix<F> map;
};

template <class F>
EvaluationMap<F> evaluation_map(const Bimodule<F>& a, const LeftModule<F>& x) {
  const F& field = x.field();
  HomModule<F> hom = hom_module(a, x);
  TensorModule<F> tensor = tensor_over(a, hom.module);
  const std::size_t dh = hom.module.dim;
  Matrix<F> raw(field, x.dim, a.dim * dh);
  for (std::size_t t = 0; t < dh; ++t) {
    Matrix<F> f = hom.space.element(t);
    for (std::size_t ai = 0; ai < a.dim; ++ai) raw.set_col(ai * dh + t, f.col(ai));
  }
  Matrix<F> map = raw * tensor.space.section();
  return {std::move(hom), std::move(tensor), std::move(map)};
}

// ---- composition and isomorphism ----

/// Γ ∘ Δ for Γ an R-S context and Δ an S-T context: bimodules M⊗_S M′ and
/// N′⊗_S N with (m⊗m′)⊗(n′⊗n) ↦ φ(m·φ′(m′⊗n′) ⊗ n) and symmetrically.
template <class F>
MoritaContext<F> compose_contexts(const MoritaContext<F>& g, const MoritaContext<F>& d) {
  if (!same_algebra(g.s, d.r)) throw invalid_input("compose_contexts: middle algebras differ");
  const F& field = g.field();
  TensorBimodule<F> mm = tensor_over(g.m, d.m);  // R-T
  TensorBimodule<F> nn = tensor_over(d.n, g.n);  // T-R
  const std::size_t dm = g.m.dim, dm2 = d.m.dim, dn = g.n.dim, dn2 = d.n.dim;
  const std::size_t pm = mm.module.dim, pn = nn.module.dim;
  Matrix<F> phi_g = g.phi_raw(), psi_g = g.psi_raw(), phi_d = d.phi_raw(), psi_d = d.psi_raw();

  // φ''(m_a⊗m′_a2⊗n′_b2⊗n_b) and ψ''(n′_b2⊗n_b⊗m_a⊗m′_a2) on raw indices.
  auto phi4 = [&](std::size_t a, std::size_t a2, std::size_t b2, std::size_t b) {
    Vec<F> s = phi_d.col(a2 * dn2 + b2);
    Vec<F> ms = g.m.act_right(s).col(a);
    return g.phi_of(ms, unit_vec(field, dn, b));
  };
  auto psi4 = [&](std::size_t b2, std::size_t b, std::size_t a, std::size_t a2) {
    Vec<F> s = psi_g.col(b * dm + a);
    Vec<F> ns = d.n.act_right(s).col(b2);
    return d.psi_of(ns, unit_vec(field, dm2, a2));
  };

  Matrix<F> phi_raw(field, g.r->dim(), pm * pn), psi_raw(field, d.s->dim(), pn * pm);
  const Matrix<F>& sm = mm.space.section();
  const Matrix<F>& sn = nn.space.section();
  for (std::size_t p = 0; p < pm; ++p)
    for (std::size_t q = 0; q < pn; ++q) {
      Vec<F> acc_phi = zero_vec(field, g.r->dim()), acc_psi = zero_vec(field, d.s->dim());
      for (std::size_t a = 0; a < dm; ++a)
        for (std::size_t a2 = 0; a2 < dm2; ++a2) {
          const auto& cm = sm(a * dm2 + a2, p);
          if (is_zero(cm)) continue;
          for (std::size_t b2 = 0; b2 < dn2; ++b2)
            for (std::size_t b = 0; b < dn; ++b) {
              const auto& cn = sn(b2 * dn + b, q);
              if (is_zero(cn)) continue;
              typename F::value_type coef = cm * cn;
              Vec<F> v = phi4(a, a2, b2, b);
              for (std::size_t k = 0; k < v.size(); ++k) acc_phi[k] += coef * v[k];
              Vec<F> w = psi4(b2, b, a, a2);
              for (std::size_t k = 0; k < w.size(); ++k) acc_psi[k] += coef * w[k];
            }
        }
      phi_raw.set_col(p * pn + q, acc_phi);
      psi_raw.set_col(q * pm + p, acc_psi);
    }
  return make_context(g.r, d.s, std::move(mm.module), std::move(nn.module), phi_raw, psi_raw);
}

template <class F>
struct ContextIso {
  Matrix<F> u;  // M → M′
  Matrix<F> v;  // N → N′
};

template <class F>
struct ContextIsoSearch {
  std::optional<ContextIso<F>> iso;
  bool exhaustive = true;
  bool found() const { return iso.has_value(); }
  const char* verdict() const { return found() ? "found" : exhaustive ? "none" : "not found (sampled)"; }
};

/// Searches bimodule isomorphisms u: M → M′, v: N → N′ with φ′∘(u⊗v) = φ and
/// ψ′∘(v⊗u) = ψ. For each invertible u the conditions are linear in v.
template <class F>
ContextIsoSearch<F> contexts_isomorphic(const MoritaContext<F>& g, const MoritaContext<F>& d,
                                        const SearchPolicy& policy = {}) {
  if (!same_algebra(g.r, d.r) || !same_algebra(g.s, d.s))
    throw invalid_input("contexts_isomorphic: contexts connect different algebras");
  if (g.m.dim != d.m.dim || g.n.dim != d.n.dim) return {std::nullopt, true};
  // trace ideals are invariants
  auto tg = trace_ideals(g), td = trace_ideals(d);
  if (!(tg.i == td.i) || !(tg.j == td.j)) return {std::nullopt, true};

  const F& field = g.field();
  HomSpace<F> hu = bimodule_hom_space(g.m, d.m);
  HomSpace<F> hv = bimodule_hom_space(g.n, d.n);
  const std::size_t dm = g.m.dim, dn = g.n.dim, dr = g.r->dim(), ds = g.s->dim();
  Matrix<F> phi_g = g.phi_raw(), psi_g = g.psi_raw();
  std::vector<Matrix<F>> vs = hv.elements();
  bool inner_exhaustive = true;
  std::optional<Matrix<F>> found_v;

  auto accept_u = [&](const Matrix<F>& u) {
    // unknown coordinates y of v in hv; stack both conditions
    Matrix<F> system(field, dm * dn * dr + dn * dm * ds, hv.dim());
    Vec<F> rhs = zero_vec(field, system.rows());
    std::size_t row = 0;
    for (std::size_t a = 0; a < dm; ++a) {
      Vec<F> um = u.col(a);
      for (std::size_t b = 0; b < dn; ++b) {
        for (std::size_t t = 0; t < vs.size(); ++t) {
          Vec<F> val = d.phi_of(um, vs[t].col(b));
          for (std::size_t k = 0; k < dr; ++k) system(row + k, t) = val[k];
        }
        for (std::size_t k = 0; k < dr; ++k) rhs[row + k] = phi_g(k, a * dn + b);
        row += dr;
      }
    }
    for (std::size_t b = 0; b < dn; ++b)
      for (std::size_t a = 0; a < dm; ++a) {
        Vec<F> um = u.col(a);
        for (std::size_t t = 0; t < vs.size(); ++t) {
          Vec<F> val = d.psi_of(vs[t].col(b), um);
          for (std::size_t k = 0; k < ds; ++k) system(row + k, t) = val[k];
        }
        for (std::size_t k = 0; k < ds; ++k) rhs[row + k] = psi_g(k, b * dm + a);
        row += ds;
      }
    auto particular = solve(system, rhs);
    if (!particular) return false;
    Matrix<F> v0 = hv.combine(*particular);
    Basis<F> free = kernel_basis(system);
    if (is_invertible(v0)) {
      found_v = v0;
      return true;
    }
    // search v0 + span(free) for an invertible member
    std::vector<Vec<F>> kernel_maps;
    for (std::size_t t = 0; t < free.dim(); ++t) kernel_maps.push_back(hv.combine(free.vector(t)).flat());
    HomSpace<F> offsets(dn, dn, Basis<F>::span(field, dn * dn, kernel_maps));
    if (offsets.dim() == 0) return false;
    auto q = field.order();
    if (q && detail::exhaustive_within(*q, offsets.dim(), policy.exhaustive_limit)) {
      std::vector<std::uint64_t> digits(offsets.dim(), 0);
      while (true) {
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == *q) digits[pos++] = 0;
        if (pos == digits.size()) break;
        Vec<F> coords;
        for (auto x : digits) coords.push_back(field.element(x));
        Matrix<F> v = v0 + offsets.combine(coords);
        if (is_invertible(v)) {
          found_v = v;
          return true;
        }
      }
      return false;
    }
    inner_exhaustive = false;
    Rng rng(policy.seed + 1);
    for (std::size_t s = 0; s < policy.samples; ++s) {
      Vec<F> coords;
      for (std::size_t i = 0; i < offsets.dim(); ++i) coords.push_back(field.sample(rng));
      Matrix<F> v = v0 + offsets.combine(coords);
      if (is_invertible(v)) {
        found_v = v;
        return true;
      }
    }
    return false;
  };

  IsoSearch<F> outer = find_invertible(hu, policy, accept_u);
  if (!outer.found()) return {std::nullopt, outer.exhaustive && inner_exhaustive};
  return {ContextIso<F>{*outer.map, *found_v}, outer.exhaustive && inner_exhaustive};
}

}  // namespace morita
