#pragma once

// The torsion theory attached to a two-sided ideal I: a module is torsion
// when I∞ kills it, where I∞ is the stable power of I. Closedness is tested
// through α: X → Hom_R(I∞, X), α(x)(a) = a·x.

#include <optional>
#include <stdexcept>
#include <utility>

#include "morita/context.hpp"
#include "morita/submodules.hpp"

namespace morita {

template <class F>
struct TorsionTheory {
  AlgebraRef<F> algebra;
  Ideal<F> i;
  Ideal<F> iinf;
  std::size_t exponent;

  bool idempotent() const { return exponent == 1; }
};

template <class F>
TorsionTheory<F> torsion_theory(const Ideal<F>& i) {
  auto stable = stabilize_ideal(i);
  return {i.algebra, i, std::move(stable.ideal), stable.exponent};
}

/// I∞ as an R-R bimodule inside R.
template <class F>
Bimodule<F> ideal_bimodule(const Ideal<F>& ideal) {
  const auto& a = *ideal.algebra;
  Frame<F> frame = Frame<F>::of(ideal.basis);
  Bimodule<F> out{ideal.algebra, ideal.algebra, frame.dim(), {}, {}};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out.left_action.push_back(frame.left_inverse() * a.left_mult(i) * frame.vectors());
    out.right_action.push_back(frame.left_inverse() * a.right_mult(i) * frame.vectors());
  }
  return out;
}

template <class F>
Submodule<F> torsion_submodule(const TorsionTheory<F>& t, const LeftModule<F>& x) {
  return annihilator(x, t.iinf);
}

template <class F>
bool is_torsion(const TorsionTheory<F>& t, const LeftModule<F>& x) {
  return torsion_submodule(t, x).dim() == x.dim;
}

template <class F>
bool is_torsion_free(const TorsionTheory<F>& t, const LeftModule<F>& x) {
  return torsion_submodule(t, x).dim() == 0;
}

template <class F>
struct AlphaMap {
  HomModule<F> hom;  // Hom_R(I∞, X) with (r·f)(a) = f(a·r)
  Matrix<F> map;     // dim hom × dim X
};

template <class F>
AlphaMap<F> alpha_map(const Ideal<F>& ideal, const LeftModule<F>& x) {
  Frame<F> frame = Frame<F>::of(ideal.basis);
  HomModule<F> hom = hom_module(ideal_bimodule(ideal), x);
  Matrix<F> map(x.field(), hom.module.dim, x.dim);
  std::vector<Matrix<F>> acts;
  for (std::size_t t = 0; t < frame.dim(); ++t) acts.push_back(x.act(frame.vectors().col(t)));
  for (std::size_t c = 0; c < x.dim; ++c) {
    Matrix<F> f(x.field(), x.dim, frame.dim());
    for (std::size_t t = 0; t < frame.dim(); ++t) f.set_col(t, acts[t].col(c));
    auto coords = hom.space.coordinates(f);
    if (!coords) throw std::logic_error("alpha: a ↦ a·x is not R-linear");
    map.set_col(c, *coords);
  }
  return {std::move(hom), std::move(map)};
}

template <class F>
struct ClosedTest {
  bool closed;
  AlphaMap<F> alpha;  // witness
};

template <class F>
ClosedTest<F> closed_test(const TorsionTheory<F>& t, const LeftModule<F>& x) {
  AlphaMap<F> alpha = alpha_map(t.iinf, x);
  bool closed = alpha.map.square() && is_invertible(alpha.map);
  return {closed, std::move(alpha)};
}

template <class F>
bool is_closed(const TorsionTheory<F>& t, const LeftModule<F>& x) {
  return closed_test(t, x).closed;
}

template <class F>
struct Localization {
  LeftModule<F> module;    // Hom_R(I∞, X/t̄X)
  Matrix<F> canonical;     // X → module
  Submodule<F> torsion;    // t̄X
};

/// Hom_R(I∞, X/t̄X) with the canonical map x ↦ (a ↦ a·x̄). The defining
/// properties are checked before returning.
template <class F>
Localization<F> localize(const TorsionTheory<F>& t, const LeftModule<F>& x) {
  Submodule<F> tx = torsion_submodule(t, x);
  QuotientModule<F> q = quotient_module(x, tx.basis);
  AlphaMap<F> alpha = alpha_map(t.iinf, q.module);
  Matrix<F> canonical = alpha.map * q.projection;
  LeftModule<F> out = alpha.hom.module;
  if (!(kernel_basis(canonical) == tx.basis)) throw std::logic_error("localize: kernel differs from the torsion part");
  if (!is_closed(t, out)) throw std::logic_error("localize: result is not closed");
  Basis<F> image = Basis<F>::column_span(canonical);
  if (!is_torsion(t, quotient_module(out, image).module)) throw std::logic_error("localize: cokernel is not torsion");
  return {std::move(out), std::move(canonical), std::move(tx)};
}

/// A verdict computed over all or over a sample of the relevant submodules.
struct OracleVerdict {
  bool value;
  bool exhaustive;
};

template <class F>
struct OracleOptions {
  std::uint64_t budget = default_enumeration_budget;
  std::size_t samples = 256;
  std::uint64_t seed = 0;
};

/// Whether every f: X′ → M extends to X, for all X′ ≤ X with X/X′ torsion.
template <class F>
OracleVerdict rel_injective_oracle(const TorsionTheory<F>& t, const LeftModule<F>& m, const LeftModule<F>& x,
                                   const OracleOptions<F>& opt = {}) {
  SubmoduleFamily<F> family = submodules_or_sample(x, opt.budget, opt.samples, opt.seed);
  HomSpace<F> from_x = hom_space(x, m);
  for (const auto& sub : family.members) {
    if (!is_torsion(t, quotient_module(x, sub.basis).module)) continue;
    Frame<F> frame = Frame<F>::of(sub.basis);
    LeftModule<F> xs = submodule_as_module(x, frame);
    HomSpace<F> from_sub = hom_space(xs, m);
    std::vector<Vec<F>> restricted;
    for (std::size_t g = 0; g < from_x.dim(); ++g) restricted.push_back((from_x.element(g) * frame.vectors()).flat());
    Basis<F> image = Basis<F>::span(x.field(), m.dim * frame.dim(), restricted);
    if (!image.contains(from_sub.basis())) return {false, family.exhaustive};
  }
  return {true, family.exhaustive};
}

/// Bijectivity of β ↦ β∘η(R): Hom_R(R, X) → Hom_R(M⊗N⊗R, X).
template <class F>
bool closed_via_eta(const MoritaContext<F>& g, const LeftModule<F>& x) {
  LeftModule<F> u = regular_left(g.r);
  CounitMap<F> eta = eta_map(g, u);
  HomSpace<F> from_u = hom_space(u, x);
  HomSpace<F> from_w = hom_space(eta.outer.module, x);
  if (from_u.dim() != from_w.dim()) return false;
  Matrix<F> induced(x.field(), from_w.dim(), from_u.dim());
  for (std::size_t b = 0; b < from_u.dim(); ++b) {
    auto coords = from_w.coordinates(from_u.element(b) * eta.map);
    if (!coords) throw std::logic_error("closed_via_eta: β∘η is not R-linear");
    induced.set_col(b, *coords);
  }
  return is_invertible(induced);
}

/// Dimensions of X ⊇ IX ⊇ I²X ⊇ ... until the chain stops.
template <class F>
std::vector<std::size_t> ideal_power_chain(const Ideal<F>& i, const LeftModule<F>& x) {
  std::vector<std::size_t> dims{x.dim};
  Frame<F> current = Frame<F>::of(Basis<F>::full(x.field(), x.dim));
  while (true) {
    std::vector<Vec<F>> vectors;
    for (std::size_t t = 0; t < i.dim(); ++t) {
      Matrix<F> a = x.act(i.basis.vector(t)) * current.vectors();
      for (std::size_t c = 0; c < a.cols(); ++c) vectors.push_back(a.col(c));
    }
    Basis<F> next = Basis<F>::span(x.field(), x.dim, vectors);
    if (next.dim() == dims.back()) return dims;
    dims.push_back(next.dim());
    current = Frame<F>::of(next);
  }
}

}  // namespace morita
