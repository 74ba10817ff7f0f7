#pragma once

// Brute-force representation numbers on explicit maximal orders of the definite
// quaternion algebras ramified at {p, ∞} whose genus has a single class
// (p = 2, 3, 5, 7, 13). Provides the enumeration side of the genus term
// Σ_L R_L(Q_n)/w_L.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "heegner/arith.hpp"
#include "heegner/clifford.hpp"
#include "heegner/errors.hpp"
#include "heegner/matrix.hpp"
#include "heegner/quaternion.hpp"
#include "heegner/rational.hpp"

namespace heegner {

/// Rank-4 lattice with the trace pairing B(x, y) = Tr(x·conj(y)); the
/// diagonal of `gram` is twice the reduced norm of each basis vector.
struct QuatLattice {
  std::int64_t p = 0;
  IntMatrix<4> gram{};
  std::array<std::string, 4> labels;
};

inline constexpr std::array<std::int64_t, 5> kOneClassPrimes = {2, 3, 5, 7, 13};

inline bool in_one_class_table(std::int64_t p) {
  return std::find(kOneClassPrimes.begin(), kOneClassPrimes.end(), p) != kOneClassPrimes.end();
}

/// Normalizer index v = [N(E) : Q^×E^×] of the table's maximal orders.
inline std::int64_t normalizer_index(std::int64_t p) {
  if (!in_one_class_table(p))
    throw UnsupportedConfiguration("no maximal order table entry for p = " + std::to_string(p));
  return 2;
}

namespace detail {

struct OrderModel {
  std::int64_t a, b;
  std::array<Quaternion, 4> basis;
  std::array<std::string, 4> labels;
};

inline OrderModel order_model(std::int64_t p) {
  const Rational h(1, 2), q(1, 4), one(1), zero(0);
  switch (p) {
    case 2:  // Hurwitz order
      return {-1, -1,
              {{{one, zero, zero, zero}, {zero, one, zero, zero}, {zero, zero, one, zero}, {h, h, h, h}}},
              {"1", "i", "j", "(1+i+j+k)/2"}};
    case 3:
    case 7:
      return {-1, -p,
              {{{one, zero, zero, zero}, {zero, one, zero, zero}, {h, zero, h, zero}, {zero, h, zero, h}}},
              {"1", "i", "(1+j)/2", "(i+k)/2"}};
    case 5:
    case 13:
      return {-2, -p,
              {{{one, zero, zero, zero}, {h, zero, h, h}, {zero, q, h, q}, {zero, zero, zero, one}}},
              {"1", "(1+j+k)/2", "(i+2j+k)/4", "k"}};
    default:
      throw UnsupportedConfiguration("no maximal order table entry for p = " + std::to_string(p));
  }
}

}  // namespace detail

/// Gram matrix of a maximal order in the definite algebra ramified at {p, ∞},
/// certified to be a ring with integral trace form and det = p².
inline QuatLattice maximal_order_gram(std::int64_t p) {
  const detail::OrderModel model = detail::order_model(p);
  const QuaternionAlgebra alg(model.a, model.b);

  QuatLattice out{p, {}, model.labels};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const Rational t = alg.trace_pairing(model.basis[i], model.basis[j]);
      if (!is_integral(t)) throw InternalInconsistency("trace form is not integral for p = " + std::to_string(p));
      out.gram[i][j] = static_cast<std::int64_t>(boost::multiprecision::numerator(t));
    }

  // closure under multiplication: every b_i·b_j has integral coordinates
  SquareMatrix<Rational, 4> coords{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) coords[k][i] = model.basis[i][k];
  const auto to_basis = inverse(coords);
  if (!to_basis) throw InternalInconsistency("order basis is singular");
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const Quaternion prod = alg.multiply(model.basis[i], model.basis[j]);
      for (std::size_t r = 0; r < 4; ++r) {
        Rational c(0);
        for (std::size_t k = 0; k < 4; ++k) c += (*to_basis)[r][k] * prod[k];
        if (!is_integral(c)) throw InternalInconsistency("basis is not closed under multiplication for p = " + std::to_string(p));
      }
    }

  if (determinant(out.gram) != p * p)
    throw InternalInconsistency("maximal order certification failed: det != p^2 for p = " + std::to_string(p));
  if (!is_positive_definite(out.gram)) throw InternalInconsistency("order Gram matrix is not positive definite");
  return out;
}

/// All lattice vectors bucketed by xᵀ·G·x, enumerated Fincke–Pohst style up to a
/// bound that grows on demand. Floating point only prunes the search (with
/// slack); membership is decided in exact integer arithmetic.
class ShortVectorIndex {
 public:
  using Vec = IntVector<4>;

  explicit ShortVectorIndex(const IntMatrix<4>& gram) : gram_(gram) {
    if (!is_positive_definite(gram)) throw InvalidInput("lattice Gram matrix must be positive definite");
    decompose();
  }

  const IntMatrix<4>& gram() const { return gram_; }

  void ensure(std::int64_t bound) {
    if (bound <= bound_) return;
    enumerate(std::max(bound, 2 * bound_));
  }

  const std::vector<Vec>& with_value(std::int64_t value) {
    ensure(value);
    static const std::vector<Vec> kEmpty;
    const auto it = buckets_.find(value);
    return it == buckets_.end() ? kEmpty : it->second;
  }

 private:
  void decompose() {
    // q[i][i] > 0 and Q(x) = Σ_i q[i][i]·(x_i + Σ_{j>i} q[i][j]·x_j)²
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) q_[i][j] = static_cast<long double>(gram_[i][j]);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        q_[j][i] = q_[i][j];
        q_[i][j] /= q_[i][i];
      }
      for (std::size_t k = i + 1; k < 4; ++k)
        for (std::size_t l = k; l < 4; ++l) q_[k][l] -= q_[k][i] * q_[i][l];
    }
  }

  void enumerate(std::int64_t bound) {
    buckets_.clear();
    bound_ = bound;
    Vec x{};
    recurse(3, static_cast<long double>(bound), x);
  }

  void recurse(int level, long double remaining, Vec& x) {
    const auto i = static_cast<std::size_t>(level);
    long double center = 0;
    for (std::size_t j = i + 1; j < 4; ++j) center -= q_[i][j] * static_cast<long double>(x[j]);
    const long double slack = 1e-6L * (1 + static_cast<long double>(bound_));
    const long double radius = std::sqrt(std::max<long double>(0, (remaining + slack) / q_[i][i]));
    const auto lo = static_cast<std::int64_t>(std::ceil(center - radius - 1e-9L));
    const auto hi = static_cast<std::int64_t>(std::floor(center + radius + 1e-9L));
    for (std::int64_t v = lo; v <= hi; ++v) {
      x[i] = v;
      const long double d = static_cast<long double>(v) - center;
      const long double rest = remaining - q_[i][i] * d * d;
      if (rest < -slack) continue;
      if (level == 0) {
        const std::int64_t value = bilinear(gram_, x, x);
        if (value <= bound_) buckets_[value].push_back(x);
      } else {
        recurse(level - 1, rest, x);
      }
    }
    x[i] = 0;
  }

  IntMatrix<4> gram_;
  SquareMatrix<long double, 4> q_{};
  std::int64_t bound_ = -1;
  std::map<std::int64_t, std::vector<Vec>> buckets_;
};

namespace detail {

template <std::size_t K>
void require_semidefinite_even(const IntMatrix<K>& target) {
  if (!is_symmetric(target)) throw InvalidInput("target Gram matrix must be symmetric");
  for (std::size_t i = 0; i < K; ++i)
    if (target[i][i] < 0 || target[i][i] % 2 != 0)
      throw InvalidInput("target Gram matrix must have a nonnegative even diagonal");
  // every principal minor must be nonnegative
  for (unsigned mask = 1; mask < (1u << K); ++mask) {
    IntMatrix<K> sub = identity_matrix<std::int64_t, K>();
    std::array<std::size_t, K> idx{};
    std::size_t k = 0;
    for (std::size_t i = 0; i < K; ++i)
      if (mask & (1u << i)) idx[k++] = i;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) sub[r][c] = target[idx[r]][idx[c]];
    if (determinant(sub) < 0) throw InvalidInput("target Gram matrix is indefinite");
  }
}

}  // namespace detail

/// Calls visit(v) for every K-tuple v of lattice vectors with B(v_i, v_j) = target[i][j].
template <std::size_t K, typename Visit>
void for_each_gram_realization(ShortVectorIndex& index, const IntMatrix<K>& target, Visit&& visit) {
  detail::require_semidefinite_even(target);
  using Vec = ShortVectorIndex::Vec;
  std::int64_t top = 0;
  for (std::size_t i = 0; i < K; ++i) top = std::max(top, target[i][i]);
  index.ensure(top);

  std::array<std::vector<Vec>, K> initial;
  for (std::size_t i = 0; i < K; ++i) initial[i] = index.with_value(target[i][i]);

  std::array<Vec, K> chosen{};
  const IntMatrix<4>& gram = index.gram();
  std::function<void(std::size_t, const std::array<std::vector<Vec>, K>&)> step =
      [&](std::size_t level, const std::array<std::vector<Vec>, K>& cands) {
        for (const Vec& v : cands[level]) {
          chosen[level] = v;
          if (level + 1 == K) {
            visit(static_cast<const std::array<Vec, K>&>(chosen));
            continue;
          }
          std::array<std::vector<Vec>, K> next;
          bool empty = false;
          for (std::size_t j = level + 1; j < K && !empty; ++j) {
            for (const Vec& w : cands[j])
              if (bilinear(gram, v, w) == target[level][j]) next[j].push_back(w);
            empty = next[j].empty();
          }
          if (!empty) step(level + 1, next);
        }
      };
  step(0, initial);
}

template <std::size_t K>
std::int64_t count_vectors_with_gram(ShortVectorIndex& index, const IntMatrix<K>& target) {
  std::int64_t count = 0;
  for_each_gram_realization(index, target, [&](const auto&) { ++count; });
  return count;
}

template <std::size_t K>
std::int64_t count_vectors_with_gram(const QuatLattice& lattice, const IntMatrix<K>& target) {
  ShortVectorIndex index(lattice.gram);
  return count_vectors_with_gram(index, target);
}

/// R_L(Q): isometric embeddings of (Z³, Q) into L.
inline std::int64_t representation_count(ShortVectorIndex& index, const TernaryForm& form) {
  if (!is_positive_definite(form.gram())) throw InvalidInput("representation_count requires a positive definite form");
  return count_vectors_with_gram(index, form.gram());
}

inline std::int64_t representation_count(const QuatLattice& lattice, const TernaryForm& form) {
  ShortVectorIndex index(lattice.gram);
  return representation_count(index, form);
}

struct IsometryCounts {
  std::int64_t proper = 0;
  std::int64_t improper = 0;
};

/// Integral isometries of L, split by the sign of det U (images of the basis are
/// the columns of U).
inline IsometryCounts isometry_counts(ShortVectorIndex& index) {
  IsometryCounts out;
  for_each_gram_realization(index, index.gram(), [&](const std::array<IntVector<4>, 4>& images) {
    IntMatrix<4> u{};
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t r = 0; r < 4; ++r) u[r][c] = images[c][r];
    const std::int64_t d = determinant(u);
    if (d == 1) ++out.proper;
    else if (d == -1) ++out.improper;
    else throw InternalInconsistency("isometry with determinant other than +-1");
  });
  return out;
}

inline std::int64_t proper_automorphism_count(const QuatLattice& lattice) {
  ShortVectorIndex index(lattice.gram);
  return isometry_counts(index).proper;
}

/// Lattice-side genus terms R_L(Q_n)/w_L for the one-class table, with the
/// per-prime lattice, vector index and automorphism count cached on the object.
class GenusOracle {
 public:
  struct Entry {
    QuatLattice lattice;
    std::unique_ptr<ShortVectorIndex> index;
    std::int64_t units = 0;      // #E^×: vectors with 2·Nr = 2
    std::int64_t automorphisms;  // w_L
  };

  Entry& entry(std::int64_t p) {
    if (!in_one_class_table(p))
      throw UnsupportedConfiguration("lattice oracle has no one-class genus for p = " + std::to_string(p));
    auto it = entries_.find(p);
    if (it != entries_.end()) return it->second;
    Entry e{maximal_order_gram(p), nullptr, 0, 0};
    e.index = std::make_unique<ShortVectorIndex>(e.lattice.gram);
    e.units = static_cast<std::int64_t>(e.index->with_value(2).size());
    e.automorphisms = isometry_counts(*e.index).proper;
    return entries_.emplace(p, std::move(e)).first->second;
  }

  /// R_L(Q_n) on the table's maximal order at p.
  std::int64_t representation_count(std::int64_t p, std::int64_t D1, std::int64_t D2, std::int64_t n) {
    return heegner::representation_count(*entry(p).index, qn_form(D1, D2, n));
  }

  Rational genus_term(std::int64_t p, std::int64_t D1, std::int64_t D2, std::int64_t n) {
    const std::int64_t delta = delta_n(D1, D2, n);
    if (delta >= 0) throw InvalidInput("genus_term requires n^2 < D1*D2");
    if (delta % p != 0)
      throw InvalidInput("genus_term requires p | delta_n (p=" + std::to_string(p) + ", n=" + std::to_string(n) + ")");
    Entry& e = entry(p);
    return Rational(representation_count(p, D1, D2, n), e.automorphisms);
  }

 private:
  std::map<std::int64_t, Entry> entries_;
};

inline Rational genus_term(std::int64_t p, std::int64_t D1, std::int64_t D2, std::int64_t n) {
  GenusOracle oracle;
  return oracle.genus_term(p, D1, D2, n);
}

}  // namespace heegner
