#pragma once

// Isomorphism search: find an invertible element of a Hom space.
// Over GF(p) with p^d ≤ exhaustive_limit every combination of the d basis
// maps is tried, so "none" is a proof; otherwise a fixed-seed sample is
// tested and a miss is reported as not found (sampled).

#include <cstdint>
#include <optional>

#include "morita/hom.hpp"

namespace morita {

struct SearchPolicy {
  std::uint64_t exhaustive_limit = 4096;
  std::size_t samples = 512;
  std::uint64_t seed = 0;
};

template <class F>
struct IsoSearch {
  std::optional<Matrix<F>> map;
  bool exhaustive = true;

  bool found() const { return map.has_value(); }
  /// "found", "none" (proven) or "not found (sampled)".
  const char* verdict() const { return found() ? "found" : exhaustive ? "none" : "not found (sampled)"; }
};

namespace detail {

inline bool exhaustive_within(std::uint64_t q, std::size_t d, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (total > limit / q) return false;
    total *= q;
  }
  return total <= limit;
}

}  // namespace detail

/// First invertible element of `space` under the search policy. An optional
/// predicate further restricts acceptable maps.
template <class F, class Accept>
IsoSearch<F> find_invertible(const HomSpace<F>& space, const SearchPolicy& policy, Accept&& accept) {
  const F& field = space.field();
  if (space.target_dim() != space.source_dim()) return {std::nullopt, true};
  if (space.target_dim() == 0) {
    Matrix<F> empty(field, 0, 0);
    if (accept(empty)) return {empty, true};
    return {std::nullopt, true};
  }
  const std::size_t d = space.dim();
  if (d == 0) return {std::nullopt, true};
  auto try_coords = [&](const Vec<F>& coords) -> std::optional<Matrix<F>> {
    Matrix<F> f = space.combine(coords);
    if (is_invertible(f) && accept(f)) return f;
    return std::nullopt;
  };
  auto q = field.order();
  if (q && detail::exhaustive_within(*q, d, policy.exhaustive_limit)) {
    std::vector<std::uint64_t> digits(d, 0);
    while (true) {
      std::size_t pos = 0;
      while (pos < d && ++digits[pos] == *q) digits[pos++] = 0;
      if (pos == d) break;
      Vec<F> coords;
      for (auto x : digits) coords.push_back(field.element(x));
      if (auto f = try_coords(coords)) return {std::move(f), true};
    }
    return {std::nullopt, true};
  }
  Rng rng(policy.seed);
  for (std::size_t s = 0; s < policy.samples; ++s) {
    Vec<F> coords;
    for (std::size_t i = 0; i < d; ++i) coords.push_back(field.sample(rng));
    if (auto f = try_coords(coords)) return {std::move(f), false};
  }
  return {std::nullopt, false};
}

template <class F>
IsoSearch<F> find_invertible(const HomSpace<F>& space, const SearchPolicy& policy = {}) {
  return find_invertible(space, policy, [](const Matrix<F>&) { return true; });
}

template <class F>
IsoSearch<F> is_isomorphic(const LeftModule<F>& m, const LeftModule<F>& n, const SearchPolicy& policy = {}) {
  if (!same_algebra(m.algebra, n.algebra)) throw invalid_input("is_isomorphic: modules over different algebras");
  if (m.dim != n.dim) return {std::nullopt, true};
  HomSpace<F> hom = hom_space(m, n);
  // M ≅ N forces Hom(M, N) ≅ End(N)
  if (hom.dim() != hom_space(n, n).dim()) return {std::nullopt, true};
  return find_invertible(hom, policy);
}

}  // namespace morita
