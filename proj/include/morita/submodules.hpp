#pragma once

// Submodule lattices over finite fields: exhaustive enumeration of echelon
// forms filtered by action stability, and seeded sampling when the space of
// subspaces is too large.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "morita/module.hpp"

namespace morita {

class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default number of subspaces an exhaustive enumeration may visit. Covers
/// GF(2)^6 (2825 subspaces) and GF(3)^5 (2664).
inline constexpr std::uint64_t default_enumeration_budget = 4096;

/// Calls fn(Basis) on every subspace of field^n, each exactly once, ordered
/// by rank, then pivot set (lexicographic), then free entries. fn returns
/// false to stop.
template <class F, class Fn>
void for_each_subspace(const F& field, std::size_t n, Fn&& fn) {
  const std::uint64_t q = *field.order();
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> pivots(k);
    for (std::size_t i = 0; i < k; ++i) pivots[i] = i;
    while (true) {
      std::vector<bool> is_pivot(n, false);
      for (auto p : pivots) is_pivot[p] = true;
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = pivots[r] + 1; c < n; ++c)
          if (!is_pivot[c]) free.emplace_back(r, c);
      std::vector<std::uint64_t> digits(free.size(), 0);
      while (true) {
        Matrix<F> m(field, k, n);
        for (std::size_t r = 0; r < k; ++r) m(r, pivots[r]) = field.one();
        for (std::size_t f = 0; f < free.size(); ++f) m(free[f].first, free[f].second) = field.element(digits[f]);
        if (!fn(Basis<F>::row_span(m))) return;
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == q) digits[pos++] = 0;
        if (pos == digits.size()) break;
      }
      // next k-combination of {0..n-1}
      std::size_t i = k;
      while (i > 0 && pivots[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++pivots[i - 1];
      for (std::size_t j = i; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
    }
  }
}

/// All submodules of m, each once. Throws budget_exceeded when the number
/// of subspaces to scan exceeds `budget`.
template <class F>
std::vector<Submodule<F>> enumerate_submodules(const LeftModule<F>& m,
                                               std::uint64_t budget = default_enumeration_budget) {
  auto q = m.field().order();
  if (!q) throw budget_exceeded("enumerate_submodules: infinite field; sample instead");
  std::uint64_t count = subspace_count(*q, m.dim);
  if (count > budget)
    throw budget_exceeded("enumerate_submodules: " + std::to_string(count) + " subspaces of " + m.field().name() + "^" +
                          std::to_string(m.dim) + " exceed budget " + std::to_string(budget));
  std::vector<Submodule<F>> out;
  for_each_subspace(m.field(), m.dim, [&](Basis<F> b) {
    if (is_submodule(m, b)) out.push_back({std::move(b)});
    return true;
  });
  return out;
}

/// Up to `count` distinct submodules, each the closure of a random set of
/// vectors. Always includes 0 and m.
template <class F>
std::vector<Submodule<F>> sample_submodules(const LeftModule<F>& m, std::size_t count, Rng& rng) {
  const F& field = m.field();
  std::vector<Submodule<F>> out{{Basis<F>(field, m.dim)}, {Basis<F>::full(field, m.dim)}};
  auto seen = [&](const Basis<F>& b) {
    for (const auto& s : out)
      if (s.basis == b) return true;
    return false;
  };
  for (std::size_t attempt = 0; attempt < 4 * count && out.size() < count; ++attempt) {
    std::size_t gens = 1 + static_cast<std::size_t>(draw(rng, std::max<std::size_t>(m.dim, 1)));
    std::vector<Vec<F>> vectors;
    for (std::size_t g = 0; g < gens; ++g) {
      Vec<F> v = zero_vec(field, m.dim);
      for (auto& x : v) x = field.sample(rng);
      vectors.push_back(std::move(v));
    }
    Submodule<F> s = submodule_closure(m, vectors);
    if (!seen(s.basis)) out.push_back(std::move(s));
  }
  return out;
}

template <class F>
struct SubmoduleFamily {
  std::vector<Submodule<F>> members;
  bool exhaustive;
};

/// Exhaustive when within budget, otherwise `samples` seeded random ones.
template <class F>
SubmoduleFamily<F> submodules_or_sample(const LeftModule<F>& m, std::uint64_t budget, std::size_t samples,
                                        std::uint64_t seed) {
  try {
    return {enumerate_submodules(m, budget), true};
  } catch (const budget_exceeded&) {
    Rng rng(seed);
    return {sample_submodules(m, samples, rng), false};
  }
}

}  // namespace morita
