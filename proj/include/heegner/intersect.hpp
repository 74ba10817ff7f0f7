#pragma once

// Arithmetic intersection numbers of Heegner divisors, assembled two ways:
//   explicit: η·Σ_n L'_{δ⁺/N⁺, δ⁻/N⁻}(0)
//   repnum:   2^{r−1}·η·Σ_p Σ_n (genus term)·α_p(Q_n)·log p
// Both produce exact LogLinear totals with a per-n breakdown.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "heegner/admissibility.hpp"
#include "heegner/arith.hpp"
#include "heegner/clifford.hpp"
#include "heegner/dirichlet.hpp"
#include "heegner/errors.hpp"
#include "heegner/lattice_oracle.hpp"
#include "heegner/localmult.hpp"
#include "heegner/rational.hpp"

namespace heegner {

enum class Method { explicit_formula, repnum };
enum class GenusSource { local_formula, lattice_oracle };
enum class AlphaSource { closed_form, gross_keating };

inline std::string to_string(Method m) { return m == Method::explicit_formula ? "explicit" : "repnum"; }
inline std::string to_string(GenusSource g) {
  return g == GenusSource::local_formula ? "local-formula" : "lattice-oracle";
}
inline std::string to_string(AlphaSource a) {
  return a == AlphaSource::closed_form ? "closed-form" : "gross-keating";
}

struct TermRow {
  std::int64_t n = 0;
  DeltaSplit split;
  LogLinear contribution;

  bool operator==(const TermRow&) const = default;
};

struct IntersectionReport {
  HeegnerInput input;
  Method method = Method::explicit_formula;
  std::optional<GenusSource> genus_source;
  std::optional<HClass> h_class;
  ValidationReport::Status status = ValidationReport::Status::ok;
  std::string reason;  // set when trivially zero
  std::vector<TermRow> rows;
  Rational prefactor{1};
  LogLinear total;
  double total_float = 0.0;
  std::vector<std::string> warnings;
};

namespace detail {

// Shared screening. Returns a trivially-zero report if the input fails a local
// necessary condition; throws on invalid or out-of-range input.
inline std::optional<IntersectionReport> screen(const HeegnerInput& in, Method method) {
  const ValidationReport v = validate(in);
  if (v.status == ValidationReport::Status::invalid) throw InvalidInput(v.reason);
  if (std::gcd(in.d1, in.d2) != 1)
    throw UnsupportedConfiguration("intersection drivers require gcd(D1, D2) = 1");
  if (v.status == ValidationReport::Status::trivially_zero) {
    IntersectionReport r;
    r.input = in;
    r.method = method;
    r.status = v.status;
    r.reason = v.reason;
    r.prefactor = Rational(0);
    return r;
  }
  return std::nullopt;
}

inline Rational pair_count_prefactor(const Level& level) {
  const int r = level.r();
  return r >= 1 ? Rational(BigInt(1) << (r - 1)) : Rational(1, 2);
}

inline void finish(IntersectionReport& report) {
  std::sort(report.rows.begin(), report.rows.end(),
            [](const TermRow& a, const TermRow& b) { return a.n < b.n; });
  LogLinear sum;
  for (const auto& row : report.rows) sum += row.contribution;
  report.total = sum * report.prefactor;
  report.total_float = report.total.to_double();
  if (!report.total.is_nonnegative())
    report.warnings.push_back(
        "negative coefficient in total: the nonvanishing hypothesis on the divisors or the h-class admissibility may fail");
}

inline IntersectionReport explicit_sum(const HeegnerInput& in, const std::optional<HClass>& cls,
                                       const Rational& prefactor) {
  IntersectionReport report;
  report.input = in;
  report.method = Method::explicit_formula;
  report.h_class = cls;
  report.prefactor = prefactor;
  for (const std::int64_t n : enumerate_n(in.d1, in.d2, in.level, cls)) {
    TermRow row;
    row.n = n;
    row.split = split_delta(in.d1, in.d2, n, in.level.nplus, in.level.nminus);
    row.contribution = l_deriv0(row.split.mplus, row.split.mminus);
    report.rows.push_back(std::move(row));
  }
  finish(report);
  return report;
}

/// ∏_{l ≠ p} L_(l)(0) over the local factors of L_{M⁺,M⁻}.
inline Rational local_genus_term(const DeltaSplit& s, std::int64_t p) {
  const DirichletFactored L = DirichletFactored::from(s.mplus, s.mminus);
  Rational v(1);
  for (const auto& [l, e] : L.plus_factors)
    if (l != p) v *= factor_value0(FactorKind::plus, l, e);
  for (const auto& [l, e] : L.minus_factors)
    if (l != p) v *= factor_value0(FactorKind::minus, l, e);
  return v;
}

inline Rational local_alpha(const HeegnerInput& in, const DeltaSplit& s, std::int64_t n, std::int64_t p,
                            AlphaSource source) {
  if (in.level.nminus % p == 0) return Rational(alpha_ram(vp(s.minus, p)));
  if (in.level.nplus % p == 0)
    throw InternalInconsistency("alpha requested at a prime of N+ with nonzero genus weight");
  if (source == AlphaSource::gross_keating && p != 2)
    return alpha_unram(gk_invariants(qn_form(in.d1, in.d2, n), p));
  return alpha_coprime(s.mminus % p == 0 ? vp(s.mminus, p) : 0);
}

}  // namespace detail

/// η·Σ_{n ≡ ±h (2N), n² < D1·D2} L'_{δ⁺/N⁺, δ⁻/N⁻}(0) for one orientation class.
inline IntersectionReport explicit_pair(const HeegnerInput& in, const HClass& cls) {
  if (auto zero = detail::screen(in, Method::explicit_formula)) {
    zero->h_class = cls;
    return *zero;
  }
  const auto classes = h_classes(in.d1, in.d2, in.level);
  if (std::find(classes.begin(), classes.end(), cls) == classes.end())
    throw InvalidInput("h-class " + cls.to_string() + " does not satisfy h^2 = D1*D2 (mod 4N)");
  return detail::explicit_sum(in, cls, eta_or_normalized(in.m));
}

/// 2^{r−1}·η·Σ_{N | δ_n, n² < D1·D2} L'_{δ⁺/N⁺, δ⁻/N⁻}(0)
inline IntersectionReport explicit_total(const HeegnerInput& in) {
  if (auto zero = detail::screen(in, Method::explicit_formula)) return *zero;
  return detail::explicit_sum(in, std::nullopt,
                              detail::pair_count_prefactor(in.level) * eta_or_normalized(in.m));
}

/// Per-prime assembly with genus terms from the local Eichler-order count or
/// from lattice enumeration. Rows hold Σ_p (genus term)·α_p·log p for each n.
inline IntersectionReport repnum_total(const HeegnerInput& in, GenusSource genus,
                                       AlphaSource alpha = AlphaSource::closed_form) {
  if (auto zero = detail::screen(in, Method::repnum)) {
    zero->genus_source = genus;
    return *zero;
  }
  if (genus == GenusSource::lattice_oracle && in.level.N() != 1)
    throw UnsupportedConfiguration("lattice oracle only covers N+ = N- = 1");

  IntersectionReport report;
  report.input = in;
  report.method = Method::repnum;
  report.genus_source = genus;
  report.prefactor = detail::pair_count_prefactor(in.level) * eta_or_normalized(in.m);

  GenusOracle oracle;
  const std::int64_t N = in.level.N();
  for (const std::int64_t n : enumerate_n(in.d1, in.d2, in.level)) {
    TermRow row;
    row.n = n;
    row.split = split_delta(in.d1, in.d2, n, in.level.nplus, in.level.nminus);
    const std::int64_t reduced = -row.split.delta / N;
    if (reduced > 1)
      for (const std::int64_t p : factorize(reduced).primes()) {  // pN | δ_n
        const Rational weight = genus == GenusSource::local_formula
                                    ? detail::local_genus_term(row.split, p)
                                    : oracle.genus_term(p, in.d1, in.d2, n);
        if (weight == 0) continue;
        row.contribution += LogLinear::log_of(p, weight * detail::local_alpha(in, row.split, n, p, alpha));
      }
    report.rows.push_back(std::move(row));
  }
  detail::finish(report);
  return report;
}

struct CrosscheckReport {
  HeegnerInput input;
  LogLinear explicit_total;
  LogLinear repnum_local;
  LogLinear repnum_local_gk;                  // α_p from Gross–Keating invariants at odd p
  std::optional<LogLinear> repnum_lattice;    // nullopt: outside the oracle's table
  std::string lattice_note;
  ValidationReport::Status status = ValidationReport::Status::ok;
  std::string reason;

  bool passed() const {
    if (repnum_local != explicit_total || repnum_local_gk != explicit_total) return false;
    return !repnum_lattice || *repnum_lattice == explicit_total;
  }
};

inline CrosscheckReport crosscheck(const HeegnerInput& in) {
  CrosscheckReport out;
  out.input = in;
  const IntersectionReport ex = explicit_total(in);
  out.status = ex.status;
  out.reason = ex.reason;
  out.explicit_total = ex.total;
  out.repnum_local = repnum_total(in, GenusSource::local_formula).total;
  out.repnum_local_gk = repnum_total(in, GenusSource::local_formula, AlphaSource::gross_keating).total;
  try {
    out.repnum_lattice = repnum_total(in, GenusSource::lattice_oracle).total;
  } catch (const UnsupportedConfiguration& e) {
    out.lattice_note = e.what();
  }
  return out;
}

}  // namespace heegner
