// Acceptance run: one PASS/FAIL line per criterion, with its time budget.
// Expected values come from oracles written here (termwise Dirichlet
// expansion, elementary divisors, independent splitting), never from the
// production closed forms they check.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "heegner/heegner.hpp"

using namespace heegner;

namespace {

const std::int64_t kCorpus[] = {-3, -4, -7, -8, -11, -15, -19, -20, -23, -24};
const Level kLevels[] = {{1, 1}, {2, 1}, {3, 1}, {5, 1}, {1, 6}, {1, 10}};

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string failure;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      failure = what;
    }
  }
};

struct Pair {
  std::int64_t d1, d2;
};

std::vector<Pair> corpus_pairs() {
  std::vector<Pair> out;
  for (std::size_t i = 0; i < std::size(kCorpus); ++i)
    for (std::size_t j = i + 1; j < std::size(kCorpus); ++j) {
      const std::int64_t d1 = kCorpus[i], d2 = kCorpus[j];
      if (std::gcd(d1, d2) == 1 && !is_square(d1 * d2)) out.push_back({d1, d2});
    }
  return out;
}

std::vector<HeegnerInput> valid_inputs() {
  std::vector<HeegnerInput> out;
  for (const auto& pr : corpus_pairs())
    for (const auto& level : kLevels) {
      const HeegnerInput in{pr.d1, pr.d2, level, std::nullopt};
      if (validate(in).status == ValidationReport::Status::ok) out.push_back(in);
    }
  return out;
}

std::string describe(const HeegnerInput& in) {
  std::ostringstream os;
  os << "(" << in.d1 << "," << in.d2 << ",N+=" << in.level.nplus << ",N-=" << in.level.nminus << ")";
  return os.str();
}

// ---- oracles ----------------------------------------------------------------

// Local Euler factor 1 ± p^{-s} + p^{-2s} ± ... (e + 1 terms) at s = 0, summed term by term.
Rational local_value_termwise(bool alternating, int e) {
  Rational v(0);
  for (int k = 0; k <= e; ++k) v += (alternating && k % 2 == 1) ? -1 : 1;
  return v;
}

// Splits −δ_n by Legendre symbols computed from squares mod p (mod 8 at 2).
struct SplitOracle {
  std::map<std::int64_t, int> plus, minus;
};

int residue_symbol(std::int64_t D, std::int64_t p) {
  if (p == 2) {
    const std::int64_t r = mod(D, 8);
    if (r % 2 == 0) return 0;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  const std::int64_t r = mod(D, p);
  if (r == 0) return 0;
  for (std::int64_t x = 1; x < p; ++x)
    if (x * x % p == r) return 1;
  return -1;
}

SplitOracle split_oracle(std::int64_t d1, std::int64_t d2, std::int64_t n) {
  SplitOracle s;
  std::int64_t m = (d1 * d2 - n * n) / 4;
  for (std::int64_t p = 2; m > 1; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e == 0) continue;
    const int k = residue_symbol(d1, p) != 0 ? residue_symbol(d1, p) : residue_symbol(d2, p);
    (k == 1 ? s.plus : s.minus)[p] = e;
  }
  return s;
}

// Σ_{d | M+M-} c_d·d^{-s} with c_d = (−1)^{Ω(gcd(d, M-))}; value and derivative at 0.
std::pair<Rational, LogLinear> dirichlet_termwise(std::int64_t mp, std::int64_t mm) {
  Rational value(0);
  LogLinear deriv;
  const std::int64_t M = mp * mm;
  for (std::int64_t d = 1; d <= M; ++d) {
    if (M % d) continue;
    int omega = 0;
    for (std::int64_t x = std::gcd(d, mm), p = 2; x > 1; ++p)
      while (x % p == 0) {
        x /= p;
        ++omega;
      }
    const int c = omega % 2 ? -1 : 1;
    value += c;
    for (std::int64_t x = d, p = 2; x > 1; ++p)
      while (x % p == 0) {
        x /= p;
        deriv.add_term(p, Rational(-c));
      }
  }
  return {value, deriv};
}

int vp_or_inf(std::int64_t x, std::int64_t p) { return x == 0 ? 1 << 20 : vp(x, p); }

std::array<int, 3> elementary_divisors(const IntMatrix<3>& g, std::int64_t p) {
  int m1 = 1 << 20, m2 = 1 << 20;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m1 = std::min(m1, vp_or_inf(g[i][j], p));
  for (int r0 = 0; r0 < 3; ++r0)
    for (int r1 = r0 + 1; r1 < 3; ++r1)
      for (int c0 = 0; c0 < 3; ++c0)
        for (int c1 = c0 + 1; c1 < 3; ++c1)
          m2 = std::min(m2, vp_or_inf(g[r0][c0] * g[r1][c1] - g[r0][c1] * g[r1][c0], p));
  const int m3 = vp(determinant(g), p);
  return {m1, m2 - m1, m3 - m2};
}

// ---- criteria -----------------------------------------------------------------

Outcome path_equivalence() {
  Outcome o;
  int checked = 0;
  for (const auto& in : valid_inputs()) {
    const LogLinear ex = explicit_total(in).total;
    const LogLinear rep = repnum_total(in, GenusSource::local_formula).total;
    o.require(ex == rep, describe(in) + ": explicit " + ex.to_string() + " != repnum " + rep.to_string());
    ++checked;
  }
  o.require(checked > 0, "no valid inputs in corpus");
  o.detail = std::to_string(checked) + " valid (pair, level) inputs";
  return o;
}

Outcome lattice_oracle_equality() {
  Outcome o;
  GenusOracle oracle;
  int tuples = 0, nonzero = 0;
  std::int64_t max_delta = 0;
  for (const auto& pr : corpus_pairs()) {
    const HeegnerInput in{pr.d1, pr.d2, Level{}, std::nullopt};
    if (validate(in).status != ValidationReport::Status::ok) continue;
    for (const std::int64_t n : enumerate_n(pr.d1, pr.d2, in.level)) {
      const SplitOracle s = split_oracle(pr.d1, pr.d2, n);
      std::map<std::int64_t, int> all = s.plus;
      all.insert(s.minus.begin(), s.minus.end());
      for (const auto& [p, e] : all) {
        if (!in_one_class_table(p)) continue;
        Rational expected(1);
        for (const auto& [l, f] : s.plus)
          if (l != p) expected *= local_value_termwise(false, f);
        for (const auto& [l, f] : s.minus)
          if (l != p) expected *= local_value_termwise(true, f);
        const Rational got = oracle.genus_term(p, pr.d1, pr.d2, n);
        std::ostringstream why;
        why << "p=" << p << " D=(" << pr.d1 << "," << pr.d2 << ") n=" << n << ": lattice " << to_string(got)
            << " != local " << to_string(expected);
        o.require(got == expected, why.str());
        ++tuples;
        if (got != 0) ++nonzero;
        max_delta = std::max(max_delta, -delta_n(pr.d1, pr.d2, n));
      }
    }
  }
  o.detail = std::to_string(tuples) + " (D1,D2,n,p) tuples, " + std::to_string(nonzero) + " nonzero, |delta| <= " +
             std::to_string(max_delta);
  return o;
}

Outcome worked_instance() {
  Outcome o;
  const HeegnerInput in{-3, -4, Level{}, std::nullopt};
  LogLinear expected = LogLinear::log_of(2) + LogLinear::log_of(3, Rational(1, 2));
  const LogLinear ex = explicit_total(in).total;
  const LogLinear local = repnum_total(in, GenusSource::local_formula).total;
  const LogLinear lattice = repnum_total(in, GenusSource::lattice_oracle).total;
  o.require(ex == expected, "explicit gave " + ex.to_string());
  o.require(local == expected, "repnum (local) gave " + local.to_string());
  o.require(lattice == expected, "repnum (lattice) gave " + lattice.to_string());
  o.detail = "total = " + ex.to_string();
  return o;
}

Outcome automorphism_identities() {
  Outcome o;
  std::ostringstream d;
  for (const auto p : kOneClassPrimes) {
    ShortVectorIndex index(maximal_order_gram(p).gram);
    const std::int64_t units = static_cast<std::int64_t>(index.with_value(2).size());
    const std::int64_t u = units / 2;
    const std::int64_t v = normalizer_index(p);
    const std::int64_t w = isometry_counts(index).proper;
    o.require(units % 2 == 0, "odd unit count at p=" + std::to_string(p));
    o.require(w == 2 * u * u * v, "p=" + std::to_string(p) + ": w=" + std::to_string(w) + " != 2u^2v");
    if (p == 2) o.require(w == 576 && u == 12 && v == 2, "Hurwitz: w=" + std::to_string(w));
    d << "p=" << p << ":w=" << w << "=2*" << u << "^2*" << v << " ";
  }
  o.detail = d.str();
  return o;
}

Outcome gram_determinants() {
  Outcome o;
  int forms = 0;
  for (const auto& pr : corpus_pairs())
    for (const auto& level : kLevels) {
      const HeegnerInput in{pr.d1, pr.d2, level, std::nullopt};
      if (validate(in).status == ValidationReport::Status::invalid) continue;
      for (const std::int64_t n : enumerate_n(pr.d1, pr.d2, level)) {
        const std::int64_t det = determinant(qn_form(pr.d1, pr.d2, n).gram());
        const std::int64_t delta = (n * n - pr.d1 * pr.d2) / 4;
        o.require(det == -2 * delta, describe(in) + " n=" + std::to_string(n));
        ++forms;
      }
    }
  for (const auto p : kOneClassPrimes)
    o.require(determinant(maximal_order_gram(p).gram) == p * p, "order det at p=" + std::to_string(p));
  o.detail = std::to_string(forms) + " Clifford forms, " + std::to_string(kOneClassPrimes.size()) + " orders";
  return o;
}

Outcome gk_stability() {
  Outcome o;
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<int> entry(-6, 6), scale(0, 2), idx(0, 2), k(-2, 2), kind(0, 2);
  int a2_zero = 0, a1_pos = 0;
  for (const std::int64_t p : {3, 5, 7}) {
    for (int i = 0; i < 100; ++i) {
      IntMatrix<3> g{};
      do {
        TernaryForm f{entry(rng), entry(rng), entry(rng), entry(rng), entry(rng), entry(rng)};
        for (std::int64_t* c : {&f.a, &f.b, &f.c, &f.d, &f.e, &f.f}) *c *= ipow(p, scale(rng));
        g = f.gram();
      } while (determinant(g) == 0);
      IntMatrix<3> u = identity_matrix<std::int64_t, 3>();
      for (int step = 0; step < 8; ++step) {
        const int a = idx(rng), b = idx(rng), t = kind(rng);
        if (t == 0) for (auto& row : u) std::swap(row[a], row[b]);
        else if (a != b) { const int c = k(rng); for (auto& row : u) row[a] += c * row[b]; }
        else for (auto& row : u) row[a] = -row[a];
      }
      const GKInvariants inv = gk_invariants(g, p);
      o.require(std::abs(determinant(u)) == 1, "transform not unimodular");
      o.require(gk_invariants(congruence(g, u), p) == inv, "invariants moved under congruence, p=" + std::to_string(p));
      o.require(inv.a == elementary_divisors(g, p), "invariants differ from elementary divisors, p=" + std::to_string(p));
      if (inv.a[0] > 0) ++a1_pos;
      if (inv.a[0] == 0 && inv.a[1] == 0) {
        ++a2_zero;
        o.require(alpha_unram(inv) == Rational(inv.a[2] + 1, 2), "alpha_unram != (a3+1)/2");
      }
    }
  }
  o.require(a2_zero > 0, "no sample exercised a2 = 0");
  o.detail = "300 forms, " + std::to_string(a2_zero) + " with a1 = a2 = 0, " + std::to_string(a1_pos) + " with a1 > 0";
  return o;
}

Outcome dirichlet_oracle() {
  Outcome o;
  int pairs = 0;
  for (std::int64_t mp = 1; mp <= 200; ++mp)
    for (std::int64_t mm = 1; mp * mm <= 200; ++mm) {
      if (std::gcd(mp, mm) != 1) continue;
      const auto [value, deriv] = dirichlet_termwise(mp, mm);
      const std::string tag = "(" + std::to_string(mp) + "," + std::to_string(mm) + ")";
      o.require(l_value0(mp, mm) == value, "L(0) at " + tag);
      o.require(l_deriv0(mp, mm) == deriv, "L'(0) at " + tag);
      ++pairs;
    }
  o.detail = std::to_string(pairs) + " coprime (M+, M-)";
  return o;
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  RunResult r;
  const std::string cmd = std::string(HEEGNER_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<ReportDocument> generate_reports() {
  std::vector<ReportDocument> docs;
  for (const auto& in : valid_inputs()) {
    docs.push_back(to_document(explicit_total(in)));
    for (const auto& c : h_classes(in.d1, in.d2, in.level)) docs.push_back(to_document(explicit_pair(in, c)));
    docs.push_back(to_document(repnum_total(in, GenusSource::local_formula)));
    if (docs.size() >= 50) break;
  }
  docs.resize(std::min<std::size_t>(docs.size(), 50));
  return docs;
}

Outcome cli_round_trip() {
  Outcome o;
  const auto docs = generate_reports();
  const auto again = generate_reports();
  o.require(docs.size() == 50, "only " + std::to_string(docs.size()) + " reports generated");
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const std::string text = serialize(docs[i]);
    const ReportDocument back = parse_document(text);
    o.require(back == docs[i], "report " + std::to_string(i) + " did not round-trip");
    o.require(serialize(back) == text, "report " + std::to_string(i) + " reserialized differently");
    o.require(serialize(again[i]) == text, "report " + std::to_string(i) + " differs between runs");
  }
  int cli_runs = 0;
  for (const std::string args : {"explicit --d1 -3 --d2 -4 --format json",
                                 "explicit --d1 -7 --d2 -4 --nplus 2 --h 2 --format json",
                                 "repnum --d1 -7 --d2 -8 --genus-source lattice --format json",
                                 "repnum --d1 -11 --d2 -8 --nplus 3 --format json",
                                 "explicit --d1 -3 --d2 -4 --nplus 3 --format json"}) {
    const RunResult a = run_cli(args), b = run_cli(args);
    o.require(a.code == 0 && b.code == 0, "cli failed: " + args);
    o.require(a.out == b.out && !a.out.empty(), "cli output not byte-identical: " + args);
    o.require(serialize(parse_document(a.out)) == a.out, "cli output not canonical: " + args);
    ++cli_runs;
  }
  o.detail = std::to_string(docs.size()) + " reports, " + std::to_string(cli_runs) + " CLI reruns";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "path equivalence: explicit == repnum(local)", 10, path_equivalence},
      {2, "lattice genus term == product of other local values", 60, lattice_oracle_equality},
      {3, "worked instance (-3,-4): log 2 + 1/2 log 3", 10, worked_instance},
      {4, "automorphism counts w = 2u^2v", 30, automorphism_identities},
      {5, "gram determinants: -2 delta_n and p^2", 10, gram_determinants},
      {6, "GK invariants stable under unimodular congruence", 10, gk_stability},
      {7, "Dirichlet closed forms == termwise expansion", 10, dirichlet_oracle},
      {8, "report round trip and byte-identical reruns", 30, cli_round_trip},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failure = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs > c.budget_s) {
      o.pass = false;
      o.failure = "over time budget";
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", secs, c.budget_s);
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.name << " (" << timing << ")";
    if (!o.detail.empty()) std::cout << " " << o.detail;
    if (!o.pass) std::cout << " -- " << o.failure;
    std::cout << "\n";
    if (!o.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
