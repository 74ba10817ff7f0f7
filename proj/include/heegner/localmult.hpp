#pragma once

// Local intersection multiplicities α_p(Q) of ternary norm forms.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <string>

#include "heegner/arith.hpp"
#include "heegner/clifford.hpp"
#include "heegner/errors.hpp"
#include "heegner/matrix.hpp"
#include "heegner/rational.hpp"

namespace heegner {

/// Gross–Keating invariants a1 ≤ a2 ≤ a3 of a ternary form at an odd prime.
struct GKInvariants {
  std::int64_t p = 0;
  std::array<int, 3> a{};

  bool operator==(const GKInvariants&) const = default;
};

/// Uᵀ·A·U = diag(diagonal), with every entry of U a p-adic integer and
/// det U a p-adic unit.
template <std::size_t N>
struct PAdicDiagonalization {
  SquareMatrix<Rational, N> basis_change = identity_matrix<Rational, N>();
  std::array<Rational, N> diagonal{};
};

/// Diagonalizes a symmetric integer matrix over Z_p for odd p. At each step
/// the remaining block's entry of least valuation is moved to the pivot; an
/// off-diagonal minimum at (i, j) is first folded onto the diagonal by adding
/// basis vector j to i, which keeps the valuation because 2 is a unit.
template <std::size_t N>
PAdicDiagonalization<N> diagonalize_p_adic(const IntMatrix<N>& gram, std::int64_t p) {
  if (p == 2) throw InvalidInput("p-adic diagonalization is only implemented for odd p");
  if (!is_prime(p)) throw InvalidInput("diagonalization modulus must be prime");
  if (!is_symmetric(gram)) throw InvalidInput("matrix to diagonalize must be symmetric");

  SquareMatrix<Rational, N> a{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) a[i][j] = Rational(gram[i][j]);
  PAdicDiagonalization<N> out;
  auto& u = out.basis_change;

  // column ops on U mirror the congruence ops on A
  auto add_basis = [&](std::size_t dst, std::size_t src, const Rational& k) {
    for (std::size_t r = 0; r < N; ++r) a[r][dst] += k * a[r][src];
    for (std::size_t c = 0; c < N; ++c) a[dst][c] += k * a[src][c];
    for (std::size_t r = 0; r < N; ++r) u[r][dst] += k * u[r][src];
  };
  auto swap_basis = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    for (std::size_t r = 0; r < N; ++r) std::swap(a[r][i], a[r][j]);
    for (std::size_t r = 0; r < N; ++r) std::swap(u[r][i], u[r][j]);
  };

  for (std::size_t k = 0; k < N; ++k) {
    int best = std::numeric_limits<int>::max();
    std::size_t bi = N, bj = N;
    for (std::size_t i = k; i < N; ++i)
      for (std::size_t j = i; j < N; ++j) {
        if (a[i][j] == 0) continue;
        const int v = valuation(a[i][j], p);
        // prefer diagonal entries on ties
        if (v < best || (v == best && i == j && bi != bj)) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (bi == N) throw InvalidInput("form is degenerate");
    if (bi != bj) add_basis(bi, bj, Rational(1));
    swap_basis(k, bi);
    if (a[k][k] == 0 || valuation(a[k][k], p) != best)
      throw InternalInconsistency("pivot lost its minimal valuation");
    for (std::size_t r = k + 1; r < N; ++r) {
      if (a[r][k] == 0) continue;
      add_basis(r, k, -a[r][k] / a[k][k]);
    }
  }
  for (std::size_t i = 0; i < N; ++i) out.diagonal[i] = a[i][i];
  return out;
}

inline GKInvariants gk_invariants(const IntMatrix<3>& gram, std::int64_t p) {
  if (p == 2)
    throw InvalidInput("Gross-Keating invariants at p = 2 are not supported");
  if (determinant(gram) == 0) throw InvalidInput("form is degenerate");
  const auto diag = diagonalize_p_adic<3>(gram, p);
  GKInvariants inv{p, {}};
  for (std::size_t i = 0; i < 3; ++i) inv.a[i] = valuation(diag.diagonal[i], p);
  std::sort(inv.a.begin(), inv.a.end());
  return inv;
}

inline GKInvariants gk_invariants(const TernaryForm& form, std::int64_t p) {
  return gk_invariants(form.gram(), p);
}

/// α_p for p unramified in the ambient algebra, in terms of (0, a2, a3).
inline Rational alpha_unram(const GKInvariants& inv) {
  const auto [a1, a2, a3] = inv.a;
  if (a1 != 0) throw InvalidInput("alpha_unram requires a1 = 0");
  const BigInt p(inv.p);
  Rational total(0);
  if (a2 % 2 == 0) {
    total += Rational(a3 - a2 + 1, 2) * Rational(boost::multiprecision::pow(p, static_cast<unsigned>(a2 / 2)));
    for (int i = 0; i <= (a2 - 2) / 2 && a2 >= 2; ++i)
      total += Rational(a2 + a3 - 4 * i) * Rational(boost::multiprecision::pow(p, static_cast<unsigned>(i)));
  } else {
    for (int i = 0; i <= (a2 - 1) / 2; ++i)
      total += Rational(a2 + a3 - 4 * i) * Rational(boost::multiprecision::pow(p, static_cast<unsigned>(i)));
  }
  return total;
}

/// α_p at a prime ramified in the ambient algebra: half of v_p(δ).
inline std::int64_t alpha_ram(int v) {
  if (v < 0 || v % 2 != 0)
    throw InvalidInput("alpha_ram requires an even nonnegative valuation, got " + std::to_string(v));
  return v / 2;
}

/// (v_p(M⁻) + 1)/2, valid at every p when gcd(D1, D2) = 1.
inline Rational alpha_coprime(int v_minus) {
  if (v_minus < 0) throw InvalidInput("valuation must be nonnegative");
  return Rational(v_minus + 1, 2);
}

}  // namespace heegner
