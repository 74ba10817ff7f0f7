#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>

namespace heegner {

template <typename T, std::size_t N>
using SquareMatrix = std::array<std::array<T, N>, N>;

template <std::size_t N>
using IntMatrix = SquareMatrix<std::int64_t, N>;

template <std::size_t N>
using IntVector = std::array<std::int64_t, N>;

template <typename T, std::size_t N>
constexpr SquareMatrix<T, N> identity_matrix() {
  SquareMatrix<T, N> m{};
  for (std::size_t i = 0; i < N; ++i) m[i][i] = T(1);
  return m;
}

template <typename T, std::size_t N>
SquareMatrix<T, N> transpose(const SquareMatrix<T, N>& a) {
  SquareMatrix<T, N> t{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) t[i][j] = a[j][i];
  return t;
}

template <typename T, std::size_t N>
SquareMatrix<T, N> multiply(const SquareMatrix<T, N>& a, const SquareMatrix<T, N>& b) {
  SquareMatrix<T, N> c{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      T s = T(0);
      for (std::size_t k = 0; k < N; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

/// Uᵀ·A·U
template <typename T, std::size_t N>
SquareMatrix<T, N> congruence(const SquareMatrix<T, N>& a, const SquareMatrix<T, N>& u) {
  return multiply(multiply(transpose(u), a), u);
}

template <typename T, std::size_t N>
bool is_symmetric(const SquareMatrix<T, N>& a) {
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (a[i][j] != a[j][i]) return false;
  return true;
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
template <std::size_t N>
std::int64_t determinant(const IntMatrix<N>& a) {
  SquareMatrix<__int128, N> m{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m[i][j] = a[i][j];
  __int128 sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < N; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < N && m[r][k] == 0) ++r;
      if (r == N) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < N; ++i)
      for (std::size_t j = k + 1; j < N; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return static_cast<std::int64_t>(sign * m[N - 1][N - 1]);
}

/// Sylvester's criterion on the leading principal minors.
template <std::size_t N>
bool is_positive_definite(const IntMatrix<N>& a) {
  if (!is_symmetric(a)) return false;
  IntMatrix<N> lead{};
  for (std::size_t k = 1; k <= N; ++k) {
    // Embed the k×k leading block in an identity so one fixed-size routine serves every minor.
    lead = identity_matrix<std::int64_t, N>();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead[i][j] = a[i][j];
    if (determinant(lead) <= 0) return false;
  }
  return true;
}

/// Inverse over a field by Gauss–Jordan elimination; nullopt when singular.
template <typename T, std::size_t N>
std::optional<SquareMatrix<T, N>> inverse(SquareMatrix<T, N> a) {
  SquareMatrix<T, N> inv = identity_matrix<T, N>();
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    while (piv < N && a[piv][col] == T(0)) ++piv;
    if (piv == N) return std::nullopt;
    std::swap(a[col], a[piv]);
    std::swap(inv[col], inv[piv]);
    const T scale = a[col][col];
    for (std::size_t j = 0; j < N; ++j) {
      a[col][j] /= scale;
      inv[col][j] /= scale;
    }
    for (std::size_t r = 0; r < N; ++r) {
      if (r == col || a[r][col] == T(0)) continue;
      const T f = a[r][col];
      for (std::size_t j = 0; j < N; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

template <std::size_t N>
std::int64_t bilinear(const IntMatrix<N>& gram, const IntVector<N>& x, const IntVector<N>& y) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < N; ++i) {
    if (x[i] == 0) continue;
    std::int64_t row = 0;
    for (std::size_t j = 0; j < N; ++j) row += gram[i][j] * y[j];
    s += x[i] * row;
  }
  return s;
}

}  // namespace heegner
