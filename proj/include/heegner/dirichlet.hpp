#pragma once

// Finite Dirichlet series L_{M+,M-}(s) at s = 0 and their derivatives at 0,
// with values in exact rational combinations of log p.

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "heegner/arith.hpp"
#include "heegner/errors.hpp"
#include "heegner/rational.hpp"

namespace heegner {

/// Exact finite sum Σ c_p·log p over primes p with rational c_p. Zero
/// coefficients are never stored, so equality is structural.
class LogLinear {
 public:
  using Terms = std::map<std::int64_t, Rational>;

  LogLinear() = default;

  static LogLinear log_of(std::int64_t p, const Rational& coeff = Rational(1)) {
    LogLinear out;
    out.add_term(p, coeff);
    return out;
  }

  void add_term(std::int64_t p, const Rational& coeff) {
    if (!is_prime(p)) throw InvalidInput("LogLinear terms are indexed by primes, got " + std::to_string(p));
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(p, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(std::int64_t p) const {
    const auto it = terms_.find(p);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool is_nonnegative() const {
    for (const auto& [p, c] : terms_)
      if (c < 0) return false;
    return true;
  }

  double to_double() const {
    double s = 0.0;
    for (const auto& [p, c] : terms_) s += heegner::to_double(c) * std::log(static_cast<double>(p));
    return s;
  }

  LogLinear& operator+=(const LogLinear& other) {
    for (const auto& [p, c] : other.terms_) add_term(p, c);
    return *this;
  }

  LogLinear& operator*=(const Rational& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [p, c] : terms_) c *= k;
    return *this;
  }

  friend LogLinear operator+(LogLinear a, const LogLinear& b) { return a += b; }
  friend LogLinear operator-(LogLinear a, const LogLinear& b) {
    LogLinear neg = b;
    neg *= Rational(-1);
    return a += neg;
  }
  friend LogLinear operator*(LogLinear a, const Rational& k) { return a *= k; }
  friend LogLinear operator*(const Rational& k, LogLinear a) { return a *= k; }

  bool operator==(const LogLinear&) const = default;

  /// "c*log(p) + ..." in increasing p, or "0".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : terms_) {
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      const Rational mag = c < 0 ? Rational(-c) : c;
      if (mag != 1) os << heegner::to_string(mag) << "*";
      os << "log(" << p << ")";
    }
    return os.str();
  }

 private:
  Terms terms_;
};

enum class FactorKind { plus, minus };

/// L_{M+,M-} as its local factors L_{p^e,1} (plus) and L_{1,p^e} (minus).
struct DirichletFactored {
  std::map<std::int64_t, int> plus_factors;
  std::map<std::int64_t, int> minus_factors;

  static DirichletFactored from(std::int64_t Mplus, std::int64_t Mminus) {
    if (Mplus < 1 || Mminus < 1) throw InvalidInput("M+ and M- must be positive");
    if (std::gcd(Mplus, Mminus) != 1) throw InvalidInput("M+ and M- must be coprime");
    DirichletFactored out;
    if (Mplus > 1) out.plus_factors = factorize(Mplus).factors;
    if (Mminus > 1) out.minus_factors = factorize(Mminus).factors;
    return out;
  }

  std::int64_t mplus() const {
    std::int64_t m = 1;
    for (const auto& [p, e] : plus_factors) m *= ipow(p, e);
    return m;
  }
  std::int64_t mminus() const {
    std::int64_t m = 1;
    for (const auto& [p, e] : minus_factors) m *= ipow(p, e);
    return m;
  }
};

/// L_{p^e,1}(0) = e + 1;  L_{1,p^e}(0) = 1 for even e, 0 for odd e.
inline Rational factor_value0(FactorKind kind, std::int64_t /*p*/, int e) {
  if (e < 0) throw InvalidInput("factor exponent must be nonnegative");
  if (kind == FactorKind::plus) return Rational(e + 1);
  return Rational(e % 2 == 0 ? 1 : 0);
}

/// Termwise derivative at 0 of 1 ± p^{-s} + p^{-2s} ± ... (e+1 terms).
inline LogLinear factor_deriv0(FactorKind kind, std::int64_t p, int e) {
  if (e < 0) throw InvalidInput("factor exponent must be nonnegative");
  if (kind == FactorKind::plus) return LogLinear::log_of(p, Rational(-(e * (e + 1) / 2)));
  if (e % 2 == 1) return LogLinear::log_of(p, Rational(e + 1, 2));
  return LogLinear::log_of(p, Rational(-e, 2));
}

inline Rational l_value0(const DirichletFactored& L) {
  Rational v(1);
  for (const auto& [p, e] : L.plus_factors) v *= factor_value0(FactorKind::plus, p, e);
  for (const auto& [p, e] : L.minus_factors) v *= factor_value0(FactorKind::minus, p, e);
  return v;
}

inline Rational l_value0(std::int64_t Mplus, std::int64_t Mminus) {
  return l_value0(DirichletFactored::from(Mplus, Mminus));
}

/// Product rule over the local factors.
inline LogLinear l_deriv0(const DirichletFactored& L) {
  struct Local {
    FactorKind kind;
    std::int64_t p;
    int e;
  };
  std::vector<Local> locals;
  for (const auto& [p, e] : L.plus_factors) locals.push_back({FactorKind::plus, p, e});
  for (const auto& [p, e] : L.minus_factors) locals.push_back({FactorKind::minus, p, e});

  LogLinear out;
  for (std::size_t i = 0; i < locals.size(); ++i) {
    Rational others(1);
    for (std::size_t j = 0; j < locals.size() && others != 0; ++j)
      if (j != i) others *= factor_value0(locals[j].kind, locals[j].p, locals[j].e);
    if (others == 0) continue;
    out += factor_deriv0(locals[i].kind, locals[i].p, locals[i].e) * others;
  }
  return out;
}

inline LogLinear l_deriv0(std::int64_t Mplus, std::int64_t Mminus) {
  return l_deriv0(DirichletFactored::from(Mplus, Mminus));
}

}  // namespace heegner
