#pragma once

// Levels, Heegner inputs, admissibility screening, η(m), orientation classes
// h (mod 2N) and the enumeration of the integers n indexing intersection terms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heegner/arith.hpp"
#include "heegner/errors.hpp"
#include "heegner/rational.hpp"

namespace heegner {

struct Level {
  std::int64_t nplus = 1;
  std::int64_t nminus = 1;

  std::int64_t N() const { return nplus * nminus; }

  /// Number of distinct primes dividing N.
  int r() const { return N() == 1 ? 0 : static_cast<int>(factorize(N()).factors.size()); }

  bool operator==(const Level&) const = default;
};

struct HeegnerInput {
  std::int64_t d1 = 0;
  std::int64_t d2 = 0;
  Level level;
  std::optional<std::int64_t> m;  // absent: η normalized to 1

  DiscSplit split1() const { return split_discriminant(d1); }
  DiscSplit split2() const { return split_discriminant(d2); }

  bool operator==(const HeegnerInput&) const = default;
};

struct ValidationReport {
  enum class Status { ok, trivially_zero, invalid };
  Status status = Status::ok;
  std::string reason;

  bool ok() const { return status == Status::ok; }
};

inline std::string to_string(ValidationReport::Status s) {
  switch (s) {
    case ValidationReport::Status::ok: return "ok";
    case ValidationReport::Status::trivially_zero: return "trivially-zero";
    case ValidationReport::Status::invalid: return "invalid";
  }
  return "unknown";
}

namespace detail {

inline std::string check_level(const Level& level) {
  if (level.nplus < 1 || level.nminus < 1) return "N+ and N- must be positive";
  if (std::gcd(level.nplus, level.nminus) != 1) return "N+ and N- must be coprime";
  if (level.nminus > 1) {
    const auto f = factorize(level.nminus);
    for (const auto& [p, e] : f.factors)
      if (e > 1) return "N- must be squarefree";
    if (f.factors.size() % 2 != 0) return "N- must have an even number of prime factors";
  }
  return {};
}

/// m = m1·m2 with gcd(m1, m2) = 1 and m1, m2 >= 4.
inline bool has_coprime_split(std::int64_t m) {
  const auto f = factorize(m);
  std::vector<std::int64_t> parts;
  for (const auto& [p, e] : f.factors) parts.push_back(ipow(p, e));
  const std::size_t k = parts.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::int64_t m1 = 1;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::uint64_t{1} << i)) m1 *= parts[i];
    if (m1 >= 4 && m / m1 >= 4) return true;
  }
  return false;
}

inline std::string check_m(const HeegnerInput& in) {
  const std::int64_t m = *in.m;
  if (m < 1) return "m must be positive";
  if (std::gcd(m, in.level.N()) != 1) return "C1 fails: gcd(m, N) != 1";
  if (!has_coprime_split(m)) return "C2 fails: m is not a product of coprime factors m1, m2 >= 4";
  // C3: every prime of m exceeds D1·D2/(4N).
  const Rational bound(in.d1 * in.d2, 4 * in.level.N());
  if (m > 1)
    for (const auto& [p, e] : factorize(m).factors)
      if (Rational(p) <= bound)
        return "C3 fails: prime " + std::to_string(p) + " of m does not exceed D1*D2/(4N)";
  return {};
}

inline std::string field_name(std::int64_t D) { return "Q(sqrt(" + std::to_string(D) + "))"; }

}  // namespace detail

/// Screens an input: type invariants and the standing assumptions on primes of N
/// (invalid), then the local necessary conditions for P_D ≠ 0 (trivially-zero).
inline ValidationReport validate(const HeegnerInput& in) {
  using Status = ValidationReport::Status;
  auto invalid = [](std::string why) { return ValidationReport{Status::invalid, std::move(why)}; };

  for (const std::int64_t D : {in.d1, in.d2}) {
    if (D >= 0) return invalid("discriminant " + std::to_string(D) + " is not negative");
    if (!is_discriminant_residue(D)) return invalid("discriminant " + std::to_string(D) + " is not 0 or 1 mod 4");
  }
  if (is_square(in.d1 * in.d2))
    return invalid("D1*D2 is a perfect square: both discriminants lie in the same quadratic field");
  if (auto why = detail::check_level(in.level); !why.empty()) return invalid(why);

  const DiscSplit s1 = in.split1();
  const DiscSplit s2 = in.split2();
  if (in.level.N() > 1)
    for (const auto& [l, e] : factorize(in.level.N()).factors) {
      if (s1.c % l == 0 || s2.c % l == 0)
        return invalid("prime " + std::to_string(l) + " of N divides a conductor");
      if (in.d1 % l == 0 && in.d2 % l == 0)
        return invalid("prime " + std::to_string(l) + " of N divides both D1 and D2");
    }
  if (in.m)
    if (auto why = detail::check_m(in); !why.empty()) return invalid(why);

  for (const auto& [p, e] : (in.level.nplus > 1 ? factorize(in.level.nplus).factors : std::map<std::int64_t, int>{}))
    for (const std::int64_t D : {in.d1, in.d2})
      if (kronecker(D, p) == -1)
        return {Status::trivially_zero, std::to_string(p) + " inert in " + detail::field_name(D)};
  for (const auto& [p, e] : (in.level.nminus > 1 ? factorize(in.level.nminus).factors : std::map<std::int64_t, int>{}))
    for (const std::int64_t D : {in.d1, in.d2})
      if (kronecker(D, p) == 1)
        return {Status::trivially_zero, std::to_string(p) + " split in " + detail::field_name(D)};
  return {};
}

/// ½·m²·∏_{p|m}(1 − p⁻²)
inline Rational eta(std::int64_t m) {
  if (m < 1) throw InvalidInput("eta requires m >= 1");
  Rational v = Rational(m) * Rational(m) / 2;
  if (m > 1)
    for (const auto& [p, e] : factorize(m).factors) v *= Rational(p * p - 1, p * p);
  return v;
}

inline Rational eta_or_normalized(const std::optional<std::int64_t>& m) {
  return m ? eta(*m) : Rational(1);
}

/// A residue class ±h modulo 2N with h² ≡ D1·D2 (mod 4N).
class HClass {
 public:
  HClass(std::int64_t h, std::int64_t modulus) : modulus_(modulus) {
    if (modulus < 2 || modulus % 2 != 0) throw InvalidInput("h-class modulus must be 2N");
    const std::int64_t r = mod(h, modulus);
    h_ = std::min(r, mod(-r, modulus));
  }

  /// Canonical representative: min(h, −h) mod 2N.
  std::int64_t h() const { return h_; }
  std::int64_t modulus() const { return modulus_; }

  /// The one or two residues of ±h in [0, 2N).
  std::vector<std::int64_t> residues() const {
    const std::int64_t other = mod(-h_, modulus_);
    if (other == h_) return {h_};
    return {h_, other};
  }

  bool contains(std::int64_t n) const {
    const std::int64_t r = mod(n, modulus_);
    return r == h_ || r == mod(-h_, modulus_);
  }

  std::string to_string() const {
    return "\xC2\xB1" + std::to_string(h_) + " (mod " + std::to_string(modulus_) + ")";
  }

  bool operator==(const HClass&) const = default;

 private:
  std::int64_t modulus_;
  std::int64_t h_ = 0;
};

inline std::vector<HClass> h_classes(std::int64_t D1, std::int64_t D2, const Level& level) {
  const std::int64_t N = level.N();
  const std::int64_t D = D1 * D2;
  std::vector<HClass> out;
  for (std::int64_t h = 0; h < 2 * N; ++h) {
    if (mod(h * h - D, 4 * N) != 0 || mod(h - D, 2) != 0) continue;
    HClass cls(h, 2 * N);
    if (std::find(out.begin(), out.end(), cls) == out.end()) out.push_back(cls);
  }
  return out;
}

/// Integers n with n² < D1·D2 and either n ≡ ±h (mod 2N) for the given class,
/// or (no class) N | δ_n, i.e. n² ≡ D1·D2 (mod 4N). Ascending.
inline std::vector<std::int64_t> enumerate_n(std::int64_t D1, std::int64_t D2, const Level& level,
                                             const std::optional<HClass>& cls = std::nullopt) {
  const std::int64_t D = D1 * D2;
  const std::int64_t N = level.N();
  if (D <= 0) throw InvalidInput("enumerate_n requires D1*D2 > 0");
  const std::int64_t bound = isqrt(D - 1);
  std::vector<std::int64_t> out;
  for (std::int64_t n = -bound; n <= bound; ++n) {
    if (n * n >= D) continue;
    if (cls) {
      if (cls->modulus() != 2 * N) throw InvalidInput("h-class modulus does not match 2N");
      if (cls->contains(n)) out.push_back(n);
    } else if (mod(n * n - D, 4 * N) == 0) {
      out.push_back(n);
    }
  }
  return out;
}

}  // namespace heegner
