#pragma once

// Verification reports. Verdicts are appended in a fixed order and carry
// witnesses (matrices as rows of printed entries) so any claim can be
// rechecked by hand.

#include <string>
#include <utility>
#include <vector>

#include "morita/matrix.hpp"

namespace morita {

using Witness = std::vector<std::vector<std::string>>;

template <class F>
Witness witness_of(const Matrix<F>& m) {
  Witness out(m.rows(), std::vector<std::string>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.field().to_string(m(r, c));
  return out;
}

struct Verdict {
  std::string subject;
  std::string check;
  bool pass = false;
  bool sampled = false;  // the verdict rests on a sample, not an exhaustive search
  std::string note;
  Witness witness;
  bool has_witness = false;
};

struct Report {
  std::string theorem;
  std::vector<Verdict> verdicts;
  std::vector<std::pair<std::string, std::string>> facts;

  Verdict& add(std::string subject, std::string check, bool pass, bool sampled = false, std::string note = {}) {
    verdicts.push_back({std::move(subject), std::move(check), pass, sampled, std::move(note), {}, false});
    return verdicts.back();
  }
  template <class F>
  Verdict& add(std::string subject, std::string check, bool pass, const Matrix<F>& witness, bool sampled = false) {
    Verdict& v = add(std::move(subject), std::move(check), pass, sampled);
    v.witness = witness_of(witness);
    v.has_witness = true;
    return v;
  }
  void fact(std::string key, std::string value) { facts.emplace_back(std::move(key), std::move(value)); }
  void append(const Report& other) {
    verdicts.insert(verdicts.end(), other.verdicts.begin(), other.verdicts.end());
    facts.insert(facts.end(), other.facts.begin(), other.facts.end());
  }

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& v : verdicts) n += v.pass ? 0 : 1;
    return n;
  }
  bool any_sampled() const {
    for (const auto& v : verdicts)
      if (v.sampled) return true;
    return false;
  }
  /// With strict_sampling a pass that rests on sampling counts as a failure.
  bool passed(bool strict_sampling = false) const {
    for (const auto& v : verdicts)
      if (!v.pass || (strict_sampling && v.sampled)) return false;
    return true;
  }
};

}  // namespace morita
