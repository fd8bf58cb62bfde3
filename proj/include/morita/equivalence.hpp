#pragma once

// Verification of the equivalence theorems of a Morita context over module
// catalogs. With F = M⊗_S −, G = N⊗_R −, F′ = Hom_R(M, −), G′ = Hom_S(N, −):
//   strict contexts: η, ρ invertible on every catalog module;
//   any context: on closed objects G′F′ ≅ 1 through η′ and F′G′ ≅ 1 through ρ′;
//   projective side: FG ≅ 1 on C_{I,proj} through η, GF ≅ 1 on C_{J,proj}.
// Equivalence of quotient categories is thereby checked on closed catalog
// objects only, plus naturality on sampled morphisms.

#include <string>
#include <utility>
#include <vector>

#include "morita/catalog.hpp"
#include "morita/report.hpp"
#include "morita/torsion.hpp"

namespace morita {

struct EngineOptions {
  SearchPolicy policy{};
  std::uint64_t budget = default_enumeration_budget;
  std::size_t oracle_samples = 256;
  std::uint64_t seed = 0;
  std::size_t naturality_samples = 2;
};

namespace detail {

inline std::string dims(std::size_t a, std::size_t b) { return std::to_string(a) + " of " + std::to_string(b); }

/// A random module map X → Y, or nullopt when Hom is zero.
template <class F>
std::optional<Matrix<F>> random_morphism(const LeftModule<F>& x, const LeftModule<F>& y, Rng& rng) {
  HomSpace<F> h = hom_space(x, y);
  if (h.dim() == 0) return std::nullopt;
  Vec<F> coords;
  for (std::size_t t = 0; t < h.dim(); ++t) coords.push_back(x.field().sample(rng));
  return h.combine(coords);
}

template <class F>
bool is_iso_matrix(const Matrix<F>& m) {
  return m.square() && is_invertible(m);
}

/// Pairs (i, j) of catalog indices used for naturality: each module with
/// itself and with its successor.
inline std::vector<std::pair<std::size_t, std::size_t>> naturality_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(i, i);
    if (i + 1 < n) out.emplace_back(i, i + 1);
  }
  return out;
}

inline std::string ideal_fact(std::size_t dim, std::size_t whole, const char* ring, std::size_t exponent) {
  std::string out = std::to_string(dim) + "-dim";
  if (dim == whole) out += std::string(", = ") + ring;
  if (exponent == 1) return out + ", idempotent (exponent 1)";
  return out + ", not idempotent (stable from exponent " + std::to_string(exponent) + ")";
}

template <class F>
void add_facts(Report& report, const MoritaContext<F>& g, const TorsionTheory<F>& ti, const TorsionTheory<F>& tj,
               const Catalog<F>& cat_r, const Catalog<F>& cat_s) {
  report.fact("R", "dim " + std::to_string(g.r->dim()));
  report.fact("S", "dim " + std::to_string(g.s->dim()));
  report.fact("I", ideal_fact(ti.i.dim(), g.r->dim(), "R", ti.exponent));
  report.fact("J", ideal_fact(tj.i.dim(), g.s->dim(), "S", tj.exponent));
  report.fact("catalog R", cat_r.describe() + ", " + std::to_string(cat_r.modules.size()) + " modules");
  report.fact("catalog S", cat_s.describe() + ", " + std::to_string(cat_s.modules.size()) + " modules");
}

}  // namespace detail

template <class F>
Report verify_strict_equivalence(const MoritaContext<F>& g, const Catalog<F>& cat_r, const Catalog<F>& cat_s,
                                 const EngineOptions& opt = {}) {
  Report report{"strict-equivalence", {}, {}};
  auto t = trace_ideals(g);
  report.fact("I", detail::dims(t.i.dim(), g.r->dim()));
  report.fact("J", detail::dims(t.j.dim(), g.s->dim()));
  if (!t.i.is_whole() || !t.j.is_whole()) {
    if (!t.i.is_whole()) report.add("context", "strict: I is a proper ideal of R (dim " + detail::dims(t.i.dim(), g.r->dim()) + ")", false);
    if (!t.j.is_whole()) report.add("context", "strict: J is a proper ideal of S (dim " + detail::dims(t.j.dim(), g.s->dim()) + ")", false);
    return report;
  }
  report.add("context", "strict", true);
  Rng rng(opt.seed);

  auto side = [&](const Catalog<F>& cat, auto&& counit, std::size_t a_dim, std::size_t b_dim, const char* name) {
    std::vector<CounitMap<F>> maps;
    for (std::size_t k = 0; k < cat.modules.size(); ++k) {
      maps.push_back(counit(cat.modules[k]));
      bool ok = detail::is_iso_matrix(maps.back().map);
      report.add(cat.names[k], std::string(name) + " invertible", ok, maps.back().map);
    }
    for (auto [i, j] : detail::naturality_pairs(cat.modules.size()))
      for (std::size_t s = 0; s < opt.naturality_samples; ++s) {
        auto f = detail::random_morphism(cat.modules[i], cat.modules[j], rng);
        if (!f) break;
        Matrix<F> lifted = counit_domain_map(maps[i], maps[j], a_dim, b_dim, *f);
        bool ok = *f * maps[i].map == maps[j].map * lifted;
        report.add(cat.names[i] + " -> " + cat.names[j], std::string(name) + " natural", ok);
      }
  };
  side(cat_r, [&](const LeftModule<F>& x) { return eta_map(g, x); }, g.m.dim, g.n.dim, "eta");
  side(cat_s, [&](const LeftModule<F>& y) { return rho_map(g, y); }, g.n.dim, g.m.dim, "rho");
  return report;
}

namespace detail {

/// One side of the Kato-Müller check, written for the R side; the S side
/// runs it on the swapped context.
template <class F>
void kato_muller_side(Report& report, const MoritaContext<F>& g, const TorsionTheory<F>& ti,
                      const TorsionTheory<F>& tj, const Catalog<F>& cat, const EngineOptions& opt, const char* unit,
                      Rng& rng) {
  std::vector<LeftModule<F>> closed;
  std::vector<UnitMap<F>> units;
  std::vector<std::string> names;
  std::size_t localized = 0, blind = 0;
  for (std::size_t k = 0; k < cat.modules.size(); ++k) {
    const LeftModule<F>& x0 = cat.modules[k];
    std::string name = cat.names[k];
    LeftModule<F> x = x0;
    if (!is_closed(ti, x0)) {
      Localization<F> loc = localize(ti, x0);
      x = loc.module;
      name = "a(" + name + ")";
      // F′ ignores the torsion difference when M is projective with I∞M = M,
      // but not in general, so this is a fact rather than a verdict
      HomModule<F> f0 = hom_module(g.m, x0), f1 = hom_module(g.m, x);
      if (is_isomorphic(f0.module, f1.module, opt.policy).found()) ++blind;
      ++localized;
    }
    HomModule<F> fx = hom_module(g.m, x);
    bool fx_closed = is_closed(tj, fx.module);
    report.add(name, "F'(X) closed (dim " + std::to_string(fx.module.dim) + ")", fx_closed);
    UnitMap<F> u = pairing_unit(g.m, g.n, g.phi_raw(), x);
    if (is_iso_matrix(u.map)) {
      report.add(name, std::string(unit) + " invertible: G'F'(X) ~ X", true, u.map);
    } else {
      auto iso = is_isomorphic(u.outer.module, x, opt.policy);
      Verdict& v = report.add(name, std::string(unit) + " not invertible; G'F'(X) ~ X by search", iso.found(),
                              !iso.exhaustive);
      if (iso.found()) {
        v.witness = witness_of(*iso.map);
        v.has_witness = true;
      }
    }
    closed.push_back(std::move(x));
    units.push_back(std::move(u));
    names.push_back(std::move(name));
  }
  for (auto [i, j] : naturality_pairs(closed.size()))
    for (std::size_t s = 0; s < opt.naturality_samples; ++s) {
      auto f = random_morphism(closed[i], closed[j], rng);
      if (!f) break;
      bool ok = unit_codomain_map(units[i], units[j], *f) * units[i].map == units[j].map * *f;
      report.add(names[i] + " -> " + names[j], std::string(unit) + " natural", ok);
    }
  report.fact(std::string("F'(X) ~ F'(a(X)) (") + unit + " side)", std::to_string(blind) + " of " + std::to_string(localized));
}

}  // namespace detail

template <class F>
Report verify_kato_muller(const MoritaContext<F>& g, const Catalog<F>& cat_r, const Catalog<F>& cat_s,
                          const EngineOptions& opt = {}) {
  Report report{"kato-muller", {}, {}};
  auto t = trace_ideals(g);
  TorsionTheory<F> ti = torsion_theory(t.i), tj = torsion_theory(t.j);
  detail::add_facts(report, g, ti, tj, cat_r, cat_s);
  report.fact("localize(R regular)", "dim " + std::to_string(localize(ti, regular_left(g.r)).module.dim));
  report.fact("localize(S regular)", "dim " + std::to_string(localize(tj, regular_left(g.s)).module.dim));
  Rng rng(opt.seed);
  detail::kato_muller_side(report, g, ti, tj, cat_r, opt, "eta'", rng);
  detail::kato_muller_side(report, swap_context(g), tj, ti, cat_s, opt, "rho'", rng);
  return report;
}

/// φ onto: R-mod is equivalent to S-mod modulo J-torsion. Checks that every
/// R-module X has F′X closed and F F′X ≅ X through evaluation, and that
/// closed S-modules come back through ρ′.
template <class F>
Report verify_one_epi(const MoritaContext<F>& g, const Catalog<F>& cat_r, const Catalog<F>& cat_s,
                      const EngineOptions& opt = {}) {
  Report report{"one-epi", {}, {}};
  auto t = trace_ideals(g);
  report.fact("I", detail::dims(t.i.dim(), g.r->dim()));
  report.fact("J", detail::dims(t.j.dim(), g.s->dim()));
  if (!t.i.is_whole()) {
    report.add("context", "phi onto: I is a proper ideal of R (dim " + detail::dims(t.i.dim(), g.r->dim()) + ")", false);
    return report;
  }
  report.add("context", "phi onto", true);
  TorsionTheory<F> ti = torsion_theory(t.i), tj = torsion_theory(t.j);
  for (std::size_t k = 0; k < cat_r.modules.size(); ++k) {
    const LeftModule<F>& x = cat_r.modules[k];
    report.add(cat_r.names[k], "closed for the trivial theory", is_closed(ti, x));
    EvaluationMap<F> ev = evaluation_map(g.m, x);
    report.add(cat_r.names[k], "F'(X) closed", is_closed(tj, ev.hom.module));
    report.add(cat_r.names[k], "evaluation F F'(X) -> X invertible", detail::is_iso_matrix(ev.map), ev.map);
  }
  for (std::size_t k = 0; k < cat_s.modules.size(); ++k) {
    const LeftModule<F>& y = cat_s.modules[k];
    if (!is_closed(tj, y)) continue;
    UnitMap<F> u = rho_prime_map(g, y);
    report.add(cat_s.names[k], "rho' invertible: F'G'(Y) ~ Y", detail::is_iso_matrix(u.map), u.map);
  }
  return report;
}

/// Whether P lifts along every X → X/K with I·K = 0, X in the catalog.
template <class F>
OracleVerdict is_I_projective_oracle(const TorsionTheory<F>& t, const LeftModule<F>& p, const Catalog<F>& cat,
                                     const EngineOptions& opt = {}) {
  bool exhaustive = cat.provenance != Provenance::sampled;
  for (const auto& x : cat.modules) {
    SubmoduleFamily<F> family = submodules_or_sample(x, opt.budget, opt.oracle_samples, opt.seed);
    exhaustive = exhaustive && family.exhaustive;
    HomSpace<F> into_x = hom_space(p, x);
    for (const auto& k : family.members) {
      if (k.dim() == 0) continue;
      Frame<F> frame = Frame<F>::of(k.basis);
      if (ideal_action_image(t.i, submodule_as_module(x, frame)).dim() != 0) continue;
      QuotientModule<F> q = quotient_module(x, k.basis);
      HomSpace<F> into_q = hom_space(p, q.module);
      std::vector<Vec<F>> pushed;
      for (std::size_t g = 0; g < into_x.dim(); ++g) pushed.push_back((q.projection * into_x.element(g)).flat());
      Basis<F> image = Basis<F>::span(x.field(), q.module.dim * p.dim, pushed);
      if (!image.contains(into_q.basis())) return {false, exhaustive};
    }
  }
  return {true, exhaustive};
}

namespace detail {

template <class F>
void projective_side(Report& report, const MoritaContext<F>& g, const TorsionTheory<F>& ti,
                     const TorsionTheory<F>& tj, const Catalog<F>& cat, const Catalog<F>& other,
                     const EngineOptions& opt, const char* unit) {
  std::size_t members = 0;
  for (std::size_t k = 0; k < cat.modules.size(); ++k) {
    const LeftModule<F>& p = cat.modules[k];
    if (ideal_action_image(ti.i, p).dim() != p.dim) continue;
    OracleVerdict proj = is_I_projective_oracle(ti, p, cat, opt);
    if (!proj.value) continue;
    ++members;
    TensorModule<F> gp = tensor_over(g.n, p);
    bool full = ideal_action_image(tj.i, gp.module).dim() == gp.module.dim;
    OracleVerdict gproj = is_I_projective_oracle(tj, gp.module, other, opt);
    report.add(cat.names[k], "G(P) in C_proj (dim " + std::to_string(gp.module.dim) + ")", full && gproj.value,
               !gproj.exhaustive || !proj.exhaustive);
    CounitMap<F> back = pairing_counit(g.m, g.n, g.phi_raw(), p);
    if (is_iso_matrix(back.map)) {
      report.add(cat.names[k], std::string(unit) + " invertible: FG(P) ~ P", true, back.map);
    } else {
      auto iso = is_isomorphic(back.outer.module, p, opt.policy);
      report.add(cat.names[k], std::string(unit) + " not invertible; FG(P) ~ P by search", iso.found(),
                 !iso.exhaustive);
    }
  }
  report.fact(std::string("C_proj members (") + unit + " side)", std::to_string(members));
}

}  // namespace detail

template <class F>
Report verify_projective_equivalence(const MoritaContext<F>& g, const Catalog<F>& cat_r, const Catalog<F>& cat_s,
                                     const EngineOptions& opt = {}) {
  Report report{"projective-equivalence", {}, {}};
  auto t = trace_ideals(g);
  TorsionTheory<F> ti = torsion_theory(t.i), tj = torsion_theory(t.j);
  detail::add_facts(report, g, ti, tj, cat_r, cat_s);
  detail::projective_side(report, g, ti, tj, cat_r, cat_s, opt, "eta");
  detail::projective_side(report, swap_context(g), tj, ti, cat_s, cat_r, opt, "rho");
  return report;
}

}  // namespace morita
