#pragma once

// Integer number theory kernel: factorization, valuations, Kronecker symbols
// and the conductor decomposition of imaginary quadratic discriminants.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "heegner/errors.hpp"

namespace heegner {

struct FactoredInt {
  int sign = 1;
  std::map<std::int64_t, int> factors;  // prime -> exponent >= 1

  std::int64_t value() const {
    std::int64_t v = sign;
    for (const auto& [p, e] : factors)
      for (int i = 0; i < e; ++i) v *= p;
    return v;
  }

  std::vector<std::int64_t> primes() const {
    std::vector<std::int64_t> out;
    out.reserve(factors.size());
    for (const auto& [p, e] : factors) out.push_back(p);
    return out;
  }

  bool operator==(const FactoredInt&) const = default;
};

/// D = c²·D0 with D0 a fundamental discriminant.
struct DiscSplit {
  std::int64_t D = 0;
  std::int64_t D0 = 0;
  std::int64_t c = 1;

  bool operator==(const DiscSplit&) const = default;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t magnitude(std::int64_t n) {
  if (n == std::numeric_limits<std::int64_t>::min())
    throw InvalidInput("integer magnitude out of range");
  return static_cast<std::uint64_t>(n < 0 ? -n : n);
}

// Brent's variant of Pollard rho; n must be odd and composite.
inline std::uint64_t pollard_rho(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

}  // namespace detail

/// Deterministic Miller–Rabin; exact for all 64-bit inputs.
inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  const auto u = static_cast<std::uint64_t>(n);
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (u % p == 0) return u == p;
  }
  std::uint64_t d = u - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = detail::powmod(a, d, u);
    if (x == 1 || x == u - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mulmod(x, x, u);
      if (x == u - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Trial division up to 10⁶, then Pollard rho on whatever cofactor is left.
inline FactoredInt factorize(std::int64_t n) {
  if (n == 0) throw InvalidInput("factorize: zero has no factorization");
  FactoredInt out;
  out.sign = n < 0 ? -1 : 1;
  std::uint64_t m = detail::magnitude(n);

  constexpr std::uint64_t kTrialLimit = 1'000'000;
  for (std::uint64_t d = 2; d <= kTrialLimit && d * d <= m; d += (d == 2 ? 1 : 2)) {
    while (m % d == 0) {
      ++out.factors[static_cast<std::int64_t>(d)];
      m /= d;
    }
  }
  std::vector<std::uint64_t> pending;
  if (m > 1) pending.push_back(m);
  while (!pending.empty()) {
    const std::uint64_t x = pending.back();
    pending.pop_back();
    if (is_prime(static_cast<std::int64_t>(x))) {
      ++out.factors[static_cast<std::int64_t>(x)];
      continue;
    }
    const std::uint64_t f = detail::pollard_rho(x);
    pending.push_back(f);
    pending.push_back(x / f);
  }
  return out;
}

inline int vp(std::int64_t n, std::int64_t p) {
  if (n == 0) throw InvalidInput("vp: valuation of zero is undefined");
  if (p < 2) throw InvalidInput("vp: modulus must be a prime");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

/// Kronecker symbol (a/n), including (a/2) by a mod 8 and (a/−1) = sign(a).
inline int kronecker(std::int64_t a, std::int64_t n) {
  static constexpr int kTwo[8] = {0, 1, 0, -1, 0, -1, 0, 1};
  if (a == 0 && n == 0) throw InvalidInput("kronecker(0, 0) is undefined");
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;

  int k = 1;
  std::uint64_t b = detail::magnitude(n);
  while (b % 2 == 0) {
    b /= 2;
    k *= kTwo[a & 7];
  }
  if (n < 0 && a < 0) k = -k;

  // Jacobi symbol (a mod b / b) for odd b > 0.
  std::uint64_t x = a >= 0 ? static_cast<std::uint64_t>(a) % b
                           : (b - detail::magnitude(a) % b) % b;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      if (b % 8 == 3 || b % 8 == 5) k = -k;
    }
    std::swap(x, b);
    if (x % 4 == 3 && b % 4 == 3) k = -k;
    x %= b;
  }
  return b == 1 ? k : 0;
}

inline bool is_square(std::int64_t n) {
  if (n < 0) return false;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

inline std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw InvalidInput("isqrt of a negative number");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool is_squarefree(std::int64_t n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factorize(n).factors)
    if (e > 1) return false;
  return true;
}

/// Nonzero integers ≡ 0,1 (mod 4) (including negatives, via the true residue).
inline bool is_discriminant_residue(std::int64_t d) {
  const std::int64_t r = ((d % 4) + 4) % 4;
  return r == 0 || r == 1;
}

inline bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 0 || d == 1) return false;
  const std::int64_t r = ((d % 4) + 4) % 4;
  if (r == 1) return is_squarefree(d);
  if (r != 0) return false;
  const std::int64_t q = d / 4;
  const std::int64_t rq = ((q % 4) + 4) % 4;
  return (rq == 2 || rq == 3) && is_squarefree(q);
}

inline DiscSplit split_discriminant(std::int64_t D) {
  if (D >= 0) throw InvalidInput("split_discriminant: D must be negative, got " + std::to_string(D));
  if (!is_discriminant_residue(D))
    throw InvalidInput("split_discriminant: D must be 0 or 1 mod 4, got " + std::to_string(D));

  // Squarefree kernel (with sign); the fundamental discriminant is it or 4 times it.
  std::int64_t kernel = -1;
  for (const auto& [p, e] : factorize(D).factors)
    if (e % 2 == 1) kernel *= p;
  const std::int64_t D0 = (((kernel % 4) + 4) % 4 == 1) ? kernel : 4 * kernel;
  const std::int64_t c2 = D / D0;
  const std::int64_t c = isqrt(c2);
  if (D % D0 != 0 || c * c != c2)
    throw InternalInconsistency("split_discriminant: D/D0 is not a square for D=" + std::to_string(D));
  return DiscSplit{D, D0, c};
}

inline std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Least nonnegative residue.
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace heegner
