#pragma once

// The order S_n = Z[g1, g2] inside the Clifford algebra of the binary form
// D1·x² + 2n·xy + D2·y², the ternary norm form Q_n on Z + Z·g1 + Z·g2, and the
// factorization of its reduced discriminant into split and inert parts.

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>

#include "heegner/arith.hpp"
#include "heegner/errors.hpp"
#include "heegner/matrix.hpp"

namespace heegner {

/// a·x² + b·y² + c·z² + d·xy + e·xz + f·yz
struct TernaryForm {
  std::int64_t a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;

  /// Gram matrix of B(u, v) = Q(u + v) − Q(u) − Q(v).
  IntMatrix<3> gram() const {
    return {{{2 * a, d, e}, {d, 2 * b, f}, {e, f, 2 * c}}};
  }

  std::int64_t operator()(std::int64_t x, std::int64_t y, std::int64_t z) const {
    return a * x * x + b * y * y + c * z * z + d * x * y + e * x * z + f * y * z;
  }

  static TernaryForm from_gram(const IntMatrix<3>& g) {
    if (!is_symmetric(g) || g[0][0] % 2 || g[1][1] % 2 || g[2][2] % 2)
      throw InvalidInput("ternary Gram matrix must be symmetric with even diagonal");
    return {g[0][0] / 2, g[1][1] / 2, g[2][2] / 2, g[0][1], g[0][2], g[1][2]};
  }

  bool operator==(const TernaryForm&) const = default;
};

struct DeltaSplit {
  std::int64_t delta = 0;   // δ_n < 0
  std::int64_t plus = 1;    // δ_n⁺
  std::int64_t minus = 1;   // δ_n⁻
  std::int64_t mplus = 1;   // δ_n⁺ / N⁺
  std::int64_t mminus = 1;  // δ_n⁻ / N⁻

  bool operator==(const DeltaSplit&) const = default;
};

namespace detail {

inline void require_clifford_parity(std::int64_t D1, std::int64_t D2, std::int64_t n) {
  if (!is_discriminant_residue(D1) || !is_discriminant_residue(D2))
    throw InvalidInput("D1 and D2 must be 0 or 1 mod 4");
  if (mod(n - D1 * D2, 2) != 0)
    throw InvalidInput("n must have the parity of D1*D2 (n=" + std::to_string(n) + ")");
}

}  // namespace detail

/// (n² − D1·D2)/4
inline std::int64_t delta_n(std::int64_t D1, std::int64_t D2, std::int64_t n) {
  detail::require_clifford_parity(D1, D2, n);
  return (n * n - D1 * D2) / 4;
}

/// Nr(x + y·g1 + z·g2)
inline TernaryForm qn_form(std::int64_t D1, std::int64_t D2, std::int64_t n) {
  detail::require_clifford_parity(D1, D2, n);
  return {1, (D1 * D1 - D1) / 4, (D2 * D2 - D2) / 4, D1, D2, (D1 * D2 - n) / 2};
}

/// S_n on the basis {1, g1, g2, g1g2} with integral structure constants.
class CliffordOrder {
 public:
  using Element = IntVector<4>;
  using Table = std::array<std::array<Element, 4>, 4>;  // table[i][j] = b_i·b_j

  CliffordOrder(std::int64_t D1, std::int64_t D2, std::int64_t n) : d1_(D1), d2_(D2), n_(n) {
    detail::require_clifford_parity(D1, D2, n);
    build_table();
    build_conjugation();
  }

  std::int64_t d1() const { return d1_; }
  std::int64_t d2() const { return d2_; }
  std::int64_t n() const { return n_; }
  const Table& table() const { return table_; }

  static Element basis(int i) {
    Element e{};
    e[static_cast<std::size_t>(i)] = 1;
    return e;
  }

  /// e_j = 2·g_j − D_j
  Element e1() const { return {-d1_, 2, 0, 0}; }
  Element e2() const { return {-d2_, 0, 2, 0}; }

  Element multiply(const Element& x, const Element& y) const {
    Element out{};
    for (std::size_t i = 0; i < 4; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < 4; ++j) {
        if (y[j] == 0) continue;
        for (std::size_t k = 0; k < 4; ++k) out[k] += x[i] * y[j] * table_[i][j][k];
      }
    }
    return out;
  }

  Element conjugate(const Element& x) const {
    Element out{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k) out[k] += x[i] * conj_[i][k];
    return out;
  }

  std::int64_t trace(const Element& x) const {
    const Element s = add(x, conjugate(x));
    if (s[1] != 0 || s[2] != 0 || s[3] != 0)
      throw InternalInconsistency("reduced trace is not a scalar");
    return s[0];
  }

  std::int64_t norm(const Element& x) const {
    const Element s = multiply(x, conjugate(x));
    if (s[1] != 0 || s[2] != 0 || s[3] != 0)
      throw InternalInconsistency("reduced norm is not a scalar");
    return s[0];
  }

  /// Tr(b_i·conj(b_j)) on the basis.
  IntMatrix<4> trace_gram() const {
    IntMatrix<4> g{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            trace(multiply(basis(i), conjugate(basis(j))));
    return g;
  }

  bool is_associative() const {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          const auto l = multiply(multiply(basis(i), basis(j)), basis(k));
          const auto r = multiply(basis(i), multiply(basis(j), basis(k)));
          if (l != r) return false;
        }
    return true;
  }

 private:
  static Element add(const Element& x, const Element& y) {
    return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]};
  }

  // Words over {g1, g2} reduced with
  //   g_j² = D_j·g_j − (D_j² − D_j)/4,
  //   g2·g1 = −g1·g2 + D2·g1 + D1·g2 + (n − D1·D2)/2
  // until only 1, g1, g2, g1g2 remain.
  Element reduce_word(const std::string& word) const {
    std::map<std::string, std::int64_t> pending{{word, 1}};
    Element out{};
    const std::int64_t t = (n_ - d1_ * d2_) / 2;
    const std::int64_t nr1 = (d1_ * d1_ - d1_) / 4;
    const std::int64_t nr2 = (d2_ * d2_ - d2_) / 4;
    while (!pending.empty()) {
      auto node = pending.extract(pending.begin());
      const std::string& w = node.key();
      const std::int64_t coeff = node.mapped();
      if (coeff == 0) continue;
      std::size_t pos = std::string::npos;
      for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == w[i + 1] || (w[i] == '2' && w[i + 1] == '1')) {
          pos = i;
          break;
        }
      if (pos == std::string::npos) {
        if (w.empty()) out[0] += coeff;
        else if (w == "1") out[1] += coeff;
        else if (w == "2") out[2] += coeff;
        else if (w == "12") out[3] += coeff;
        else throw InternalInconsistency("unexpected normal word " + w);
        continue;
      }
      const std::string head = w.substr(0, pos);
      const std::string tail = w.substr(pos + 2);
      const std::string pair = w.substr(pos, 2);
      if (pair == "11") {
        pending[head + "1" + tail] += d1_ * coeff;
        pending[head + tail] -= nr1 * coeff;
      } else if (pair == "22") {
        pending[head + "2" + tail] += d2_ * coeff;
        pending[head + tail] -= nr2 * coeff;
      } else {
        pending[head + "12" + tail] -= coeff;
        pending[head + "1" + tail] += d2_ * coeff;
        pending[head + "2" + tail] += d1_ * coeff;
        pending[head + tail] += t * coeff;
      }
    }
    return out;
  }

  void build_table() {
    static const std::array<std::string, 4> kWords = {"", "1", "2", "12"};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) table_[i][j] = reduce_word(kWords[i] + kWords[j]);
  }

  // conj(g_j) = D_j − g_j; conj(g1g2) = conj(g2)·conj(g1).
  void build_conjugation() {
    conj_[0] = {1, 0, 0, 0};
    conj_[1] = {d1_, -1, 0, 0};
    conj_[2] = {d2_, 0, -1, 0};
    conj_[3] = multiply(conj_[2], conj_[1]);
  }

  std::int64_t d1_, d2_, n_;
  Table table_{};
  std::array<Element, 4> conj_{};
};

inline CliffordOrder build_sn(std::int64_t D1, std::int64_t D2, std::int64_t n) {
  return CliffordOrder(D1, D2, n);
}

/// −δ_n = δ_n⁺·δ_n⁻ by the Kronecker symbols of D1, D2 at each prime of δ_n; the
/// quotients by (N⁺, N⁻) are filled in when a level is supplied.
inline DeltaSplit split_delta(std::int64_t D1, std::int64_t D2, std::int64_t n,
                              std::int64_t Nplus = 1, std::int64_t Nminus = 1) {
  if (std::gcd(D1, D2) != 1)
    throw InvalidInput("split_delta requires gcd(D1, D2) = 1");
  if (n * n >= D1 * D2)
    throw InvalidInput("split_delta requires n^2 < D1*D2 (n=" + std::to_string(n) + ")");
  DeltaSplit s;
  s.delta = delta_n(D1, D2, n);
  for (const auto& [p, e] : factorize(-s.delta).factors) {
    const int k1 = kronecker(D1, p);
    const int k2 = kronecker(D2, p);
    const bool split = k1 == 1 || k2 == 1;
    const bool inert = k1 == -1 || k2 == -1;
    if (split == inert)
      throw InternalInconsistency("prime " + std::to_string(p) + " of delta_n is not uniquely classified");
    (split ? s.plus : s.minus) *= ipow(p, e);
  }
  if (s.plus % Nplus != 0 || s.minus % Nminus != 0)
    throw InternalInconsistency("level does not divide delta_n^+ / delta_n^- for n=" + std::to_string(n));
  s.mplus = s.plus / Nplus;
  s.mminus = s.minus / Nminus;
  return s;
}

}  // namespace heegner
