#pragma once

// Exact scalar fields: prime fields GF(p) with p < 2^16 and the rationals.
//
// Every routine in the library is a template over a field descriptor F with
//   using value_type = ...;
//   value_type zero() const, one() const, from_int(long long) const;
//   value_type parse(std::string_view) const;      // "a" or "a/b"
//   std::string to_string(const value_type&) const;
//   std::optional<std::uint64_t> order() const;    // nullopt for infinite
//   value_type element(std::uint64_t index) const; // enumeration, finite only
//   value_type sample(Rng&) const;                 // small random element
// and element arithmetic through the usual operators.

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace morita {

using Rng = std::mt19937_64;

/// Uniform-ish integer in [0, bound). Plain modulo keeps the stream identical
/// across standard libraries, which std::uniform_int_distribution does not.
inline std::uint64_t draw(Rng& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

class invalid_input : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element of GF(p). Carries its modulus so vectors are self-describing.
class Zp {
 public:
  constexpr Zp() = default;
  constexpr Zp(std::uint32_t value, std::uint32_t p) : v_(value % p), p_(p) {}

  constexpr std::uint32_t value() const { return v_; }
  constexpr std::uint32_t modulus() const { return p_; }

  friend constexpr Zp operator+(Zp a, Zp b) {
    std::uint32_t s = a.v_ + b.v_;
    return Zp::raw(s >= a.p_ ? s - a.p_ : s, a.p_);
  }
  friend constexpr Zp operator-(Zp a, Zp b) {
    return Zp::raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_);
  }
  friend constexpr Zp operator*(Zp a, Zp b) {
    return Zp::raw(static_cast<std::uint32_t>(
                       (static_cast<std::uint64_t>(a.v_) * b.v_) % a.p_),
                   a.p_);
  }
  constexpr Zp operator-() const { return Zp::raw(v_ == 0 ? 0 : p_ - v_, p_); }
  friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }

  Zp& operator+=(Zp b) { return *this = *this + b; }
  Zp& operator-=(Zp b) { return *this = *this - b; }
  Zp& operator*=(Zp b) { return *this = *this * b; }

  friend constexpr bool operator==(Zp a, Zp b) { return a.v_ == b.v_; }

  Zp inverse() const {
    if (v_ == 0) throw std::domain_error("GF(p): inverse of zero");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = v_, e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return Zp::raw(static_cast<std::uint32_t>(result), p_);
  }

  friend std::ostream& operator<<(std::ostream& os, Zp a) { return os << a.v_; }

 private:
  static constexpr Zp raw(std::uint32_t v, std::uint32_t p) {
    Zp z;
    z.v_ = v;
    z.p_ = p;
    return z;
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 2;
};

inline bool is_zero(const Zp& a) { return a.value() == 0; }
inline bool is_zero(const mpq_class& a) { return sgn(a) == 0; }

inline bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class PrimeField {
 public:
  using value_type = Zp;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p >= (1u << 16)) throw invalid_input("GF(p): p must be < 65536");
    if (!is_prime(p)) throw invalid_input("GF(p): " + std::to_string(p) + " is not prime");
  }

  std::uint32_t characteristic() const { return p_; }
  std::optional<std::uint64_t> order() const { return p_; }

  Zp zero() const { return Zp(0, p_); }
  Zp one() const { return Zp(1, p_); }
  Zp from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return Zp(static_cast<std::uint32_t>(r), p_);
  }
  Zp element(std::uint64_t index) const { return Zp(static_cast<std::uint32_t>(index % p_), p_); }
  Zp sample(Rng& rng) const { return element(draw(rng, p_)); }

  Zp parse(std::string_view text) const {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return from_int(parse_int(text));
    Zp den = from_int(parse_int(text.substr(slash + 1)));
    if (is_zero(den)) throw invalid_input("GF(p): zero denominator in '" + std::string(text) + "'");
    return from_int(parse_int(text.substr(0, slash))) / den;
  }

  std::string to_string(Zp a) const { return std::to_string(a.value()); }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  static long long parse_int(std::string_view s) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(std::string(s), &used);
      if (used != s.size()) throw invalid_input("");
      return v;
    } catch (const std::exception&) {
      throw invalid_input("not an integer: '" + std::string(s) + "'");
    }
  }

  std::uint32_t p_;
};

class RationalField {
 public:
  using value_type = mpq_class;

  std::uint32_t characteristic() const { return 0; }
  std::optional<std::uint64_t> order() const { return std::nullopt; }

  mpq_class zero() const { return mpq_class(0); }
  mpq_class one() const { return mpq_class(1); }
  mpq_class from_int(long long n) const { return mpq_class(mpz_class(std::to_string(n))); }
  mpq_class element(std::uint64_t) const {
    throw std::logic_error("rationals: element enumeration is not available");
  }
  // Small integers in [-3, 3].
  mpq_class sample(Rng& rng) const { return from_int(static_cast<long long>(draw(rng, 7)) - 3); }

  mpq_class parse(std::string_view text) const {
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0 || text.empty())
      throw invalid_input("not a rational: '" + std::string(text) + "'");
    if (sgn(q.get_den()) == 0) throw invalid_input("rationals: zero denominator");
    q.canonicalize();
    return q;
  }

  std::string to_string(const mpq_class& a) const { return a.get_str(); }
  std::string name() const { return "Q"; }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

}  // namespace morita
