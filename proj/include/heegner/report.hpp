#pragma once

// ReportDocument: the serialized form of an IntersectionReport. Exact values
// travel as lowest-terms rational strings keyed by prime; JSON output is
// canonical (sorted keys, fixed indentation) so reruns are byte-identical.

#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "heegner/admissibility.hpp"
#include "heegner/dirichlet.hpp"
#include "heegner/errors.hpp"
#include "heegner/intersect.hpp"
#include "heegner/rational.hpp"

namespace heegner {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kEtaNormalized = "eta-normalized";

using RationalMap = std::map<std::int64_t, std::string>;

struct ReportRow {
  std::int64_t n = 0;
  std::int64_t delta = 0;
  std::int64_t delta_plus = 1;
  std::int64_t delta_minus = 1;
  std::int64_t m_plus = 1;
  std::int64_t m_minus = 1;
  RationalMap contribution;

  bool operator==(const ReportRow&) const = default;
};

struct ReportDocument {
  int schema_version = kReportSchemaVersion;
  std::int64_t d1 = 0, d2 = 0, nplus = 1, nminus = 1;
  std::optional<std::int64_t> m;
  std::string method;
  std::optional<std::string> genus_source;
  std::optional<std::int64_t> h_class;  // canonical representative; modulus is 2N
  std::string status = "ok";
  std::string reason;
  std::vector<ReportRow> rows;
  std::string prefactor = "1";
  RationalMap total;
  double total_float = 0.0;
  std::vector<std::string> warnings;

  bool operator==(const ReportDocument&) const = default;
};

/// Round to the 15 significant digits the documents carry.
inline double round_sig15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

inline RationalMap to_rational_map(const LogLinear& v) {
  RationalMap out;
  for (const auto& [p, c] : v.terms()) out.emplace(p, to_string(c));
  return out;
}

inline LogLinear from_rational_map(const RationalMap& m) {
  LogLinear out;
  for (const auto& [p, s] : m) {
    const Rational c = parse_rational(s);
    if (to_string(c) != s) throw InvalidInput("rational not in lowest terms: '" + s + "'");
    if (c == 0) throw InvalidInput("zero coefficient stored for prime " + std::to_string(p));
    out.add_term(p, c);
  }
  return out;
}

inline ReportDocument to_document(const IntersectionReport& r) {
  ReportDocument doc;
  doc.d1 = r.input.d1;
  doc.d2 = r.input.d2;
  doc.nplus = r.input.level.nplus;
  doc.nminus = r.input.level.nminus;
  doc.m = r.input.m;
  doc.method = to_string(r.method);
  if (r.genus_source) doc.genus_source = to_string(*r.genus_source);
  if (r.h_class) doc.h_class = r.h_class->h();
  doc.status = to_string(r.status);
  doc.reason = r.reason;
  for (const auto& row : r.rows)
    doc.rows.push_back({row.n, row.split.delta, row.split.plus, row.split.minus, row.split.mplus,
                        row.split.mminus, to_rational_map(row.contribution)});
  doc.prefactor = to_string(r.prefactor);
  doc.total = to_rational_map(r.total);
  doc.total_float = round_sig15(r.total_float);
  doc.warnings = r.warnings;
  return doc;
}

namespace detail {

inline nlohmann::json rational_map_json(const RationalMap& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [p, s] : m) j[std::to_string(p)] = s;
  return j;
}

inline RationalMap rational_map_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("expected an object of prime -> rational");
  RationalMap out;
  for (const auto& [key, value] : j.items()) {
    std::size_t used = 0;
    const std::int64_t p = std::stoll(key, &used);
    if (used != key.size() || !is_prime(p)) throw InvalidInput("not a prime key: '" + key + "'");
    out.emplace(p, value.get<std::string>());
  }
  from_rational_map(out);  // validates lowest terms and nonzero coefficients
  return out;
}

}  // namespace detail

inline nlohmann::json to_json(const ReportDocument& doc) {
  using nlohmann::json;
  json j;
  j["schema_version"] = doc.schema_version;
  j["input"] = {{"d1", doc.d1}, {"d2", doc.d2}, {"nplus", doc.nplus}, {"nminus", doc.nminus}};
  j["input"]["m"] = doc.m ? json(*doc.m) : json(kEtaNormalized);
  j["method"] = doc.method;
  j["genus_source"] = doc.genus_source ? json(*doc.genus_source) : json(nullptr);
  if (doc.h_class) {
    const HClass cls(*doc.h_class, 2 * doc.nplus * doc.nminus);
    j["h_class"] = {{"h", cls.h()}, {"modulus", cls.modulus()}, {"label", cls.to_string()}};
  } else {
    j["h_class"] = nullptr;
  }
  j["status"] = doc.status;
  j["reason"] = doc.reason;
  j["rows"] = json::array();
  for (const auto& r : doc.rows)
    j["rows"].push_back({{"n", r.n},
                         {"delta", r.delta},
                         {"delta_plus", r.delta_plus},
                         {"delta_minus", r.delta_minus},
                         {"m_plus", r.m_plus},
                         {"m_minus", r.m_minus},
                         {"contribution", detail::rational_map_json(r.contribution)}});
  j["prefactor"] = doc.prefactor;
  j["total"] = detail::rational_map_json(doc.total);
  j["total_float"] = doc.total_float;
  j["warnings"] = doc.warnings;
  return j;
}

inline ReportDocument document_from_json(const nlohmann::json& j) {
  try {
    ReportDocument doc;
    doc.schema_version = j.at("schema_version").get<int>();
    if (doc.schema_version != kReportSchemaVersion)
      throw InvalidInput("unsupported schema_version " + std::to_string(doc.schema_version));
    const auto& in = j.at("input");
    doc.d1 = in.at("d1").get<std::int64_t>();
    doc.d2 = in.at("d2").get<std::int64_t>();
    doc.nplus = in.at("nplus").get<std::int64_t>();
    doc.nminus = in.at("nminus").get<std::int64_t>();
    if (in.at("m").is_string()) {
      if (in.at("m").get<std::string>() != kEtaNormalized) throw InvalidInput("input.m must be an integer or \"eta-normalized\"");
    } else {
      doc.m = in.at("m").get<std::int64_t>();
    }
    doc.method = j.at("method").get<std::string>();
    if (!j.at("genus_source").is_null()) doc.genus_source = j.at("genus_source").get<std::string>();
    if (!j.at("h_class").is_null()) doc.h_class = j.at("h_class").at("h").get<std::int64_t>();
    doc.status = j.at("status").get<std::string>();
    doc.reason = j.at("reason").get<std::string>();
    for (const auto& r : j.at("rows"))
      doc.rows.push_back({r.at("n").get<std::int64_t>(), r.at("delta").get<std::int64_t>(),
                          r.at("delta_plus").get<std::int64_t>(), r.at("delta_minus").get<std::int64_t>(),
                          r.at("m_plus").get<std::int64_t>(), r.at("m_minus").get<std::int64_t>(),
                          detail::rational_map_from_json(r.at("contribution"))});
    doc.prefactor = j.at("prefactor").get<std::string>();
    if (to_string(parse_rational(doc.prefactor)) != doc.prefactor)
      throw InvalidInput("prefactor not in lowest terms");
    doc.total = detail::rational_map_from_json(j.at("total"));
    doc.total_float = j.at("total_float").get<double>();
    doc.warnings = j.at("warnings").get<std::vector<std::string>>();
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed report document: ") + e.what());
  }
}

inline std::string serialize(const ReportDocument& doc) { return to_json(doc).dump(2) + "\n"; }

inline ReportDocument parse_document(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("report is not valid JSON: ") + e.what());
  }
  return document_from_json(j);
}

inline std::string render_log_terms(const RationalMap& m) { return from_rational_map(m).to_string(); }

inline std::string format_float(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

/// Human-readable rendering; every exact value is printed from the same
/// rational strings the JSON carries.
inline std::string render_table(const ReportDocument& doc) {
  std::ostringstream os;
  os << "method: " << doc.method;
  if (doc.genus_source) os << " (genus source: " << *doc.genus_source << ")";
  os << "\n";
  os << "input: D1=" << doc.d1 << " D2=" << doc.d2 << " N+=" << doc.nplus << " N-=" << doc.nminus
     << " m=" << (doc.m ? std::to_string(*doc.m) : std::string(kEtaNormalized)) << "\n";
  os << "h-class: "
     << (doc.h_class ? HClass(*doc.h_class, 2 * doc.nplus * doc.nminus).to_string() : std::string("all")) << "\n";
  os << "status: " << doc.status;
  if (!doc.reason.empty()) os << " (" << doc.reason << ")";
  os << "\n";
  if (!doc.rows.empty()) {
    os << std::setw(6) << "n" << std::setw(9) << "delta" << std::setw(9) << "delta+" << std::setw(9) << "delta-"
       << std::setw(7) << "M+" << std::setw(7) << "M-" << "  contribution\n";
    for (const auto& r : doc.rows)
      os << std::setw(6) << r.n << std::setw(9) << r.delta << std::setw(9) << r.delta_plus << std::setw(9)
         << r.delta_minus << std::setw(7) << r.m_plus << std::setw(7) << r.m_minus << "  "
         << render_log_terms(r.contribution) << "\n";
  }
  os << "prefactor: " << doc.prefactor << "\n";
  os << "total: " << render_log_terms(doc.total) << "\n";
  os << "total (float): " << format_float(doc.total_float) << "\n";
  for (const auto& w : doc.warnings) os << "warning: " << w << "\n";
  return os.str();
}

inline nlohmann::json validation_json(const HeegnerInput& in, const ValidationReport& v) {
  return {{"input", {{"d1", in.d1}, {"d2", in.d2}, {"nplus", in.level.nplus}, {"nminus", in.level.nminus}}},
          {"status", to_string(v.status)},
          {"reason", v.reason}};
}

inline nlohmann::json h_classes_json(const Level& level, const std::vector<HClass>& classes) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : classes) arr.push_back({{"h", c.h()}, {"residues", c.residues()}, {"label", c.to_string()}});
  return {{"modulus", 2 * level.N()}, {"classes", arr}};
}

inline nlohmann::json crosscheck_json(const CrosscheckReport& c) {
  using nlohmann::json;
  json j;
  j["input"] = {{"d1", c.input.d1}, {"d2", c.input.d2}, {"nplus", c.input.level.nplus},
                {"nminus", c.input.level.nminus}};
  j["input"]["m"] = c.input.m ? json(*c.input.m) : json(kEtaNormalized);
  j["status"] = to_string(c.status);
  j["reason"] = c.reason;
  j["explicit_total"] = detail::rational_map_json(to_rational_map(c.explicit_total));
  j["repnum_local_formula"] = detail::rational_map_json(to_rational_map(c.repnum_local));
  j["repnum_local_formula_gk_alpha"] = detail::rational_map_json(to_rational_map(c.repnum_local_gk));
  j["repnum_lattice_oracle"] =
      c.repnum_lattice ? detail::rational_map_json(to_rational_map(*c.repnum_lattice)) : json(nullptr);
  j["lattice_note"] = c.lattice_note;
  j["equal"] = c.passed();
  return j;
}

}  // namespace heegner
