#include <gtest/gtest.h>

#include <numeric>

#include "heegner/report.hpp"

using namespace heegner;

namespace {

HeegnerInput make(std::int64_t d1, std::int64_t d2, std::int64_t np = 1, std::int64_t nm = 1,
                  std::optional<std::int64_t> m = std::nullopt) {
  return {d1, d2, Level{np, nm}, m};
}

std::vector<ReportDocument> sample_documents() {
  std::vector<ReportDocument> docs;
  docs.push_back(to_document(explicit_total(make(-3, -4))));
  docs.push_back(to_document(explicit_pair(make(-7, -4, 2, 1), HClass(2, 4))));
  docs.push_back(to_document(repnum_total(make(-7, -8), GenusSource::lattice_oracle)));
  docs.push_back(to_document(explicit_total(make(-3, -4, 3, 1))));
  docs.push_back(to_document(explicit_total(make(-3, -4, 1, 1, 35))));
  docs.push_back(to_document(repnum_total(make(-11, -8, 3, 1), GenusSource::local_formula)));
  return docs;
}

}  // namespace

TEST(ReportDocument, WorkedInstanceJson) {
  const auto j = to_json(to_document(explicit_total(make(-3, -4))));
  EXPECT_EQ(j["total"], (nlohmann::json{{"2", "1"}, {"3", "1/2"}}));
  EXPECT_EQ(j["input"]["m"], "eta-normalized");
  EXPECT_EQ(j["prefactor"], "1/2");
  EXPECT_EQ(j["rows"].size(), 3u);
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
}

TEST(ReportDocument, TriviallyZeroCarriesReason) {
  const auto j = to_json(to_document(explicit_total(make(-3, -4, 3, 1))));
  EXPECT_EQ(j["status"], "trivially-zero");
  EXPECT_EQ(j["reason"], "3 inert in Q(sqrt(-4))");
  EXPECT_TRUE(j["total"].empty());
}

TEST(ReportDocument, RoundTrip) {
  for (const auto& doc : sample_documents()) {
    const std::string text = serialize(doc);
    EXPECT_EQ(parse_document(text), doc);
    EXPECT_EQ(serialize(parse_document(text)), text);
  }
}

TEST(ReportDocument, CanonicalKeyOrder) {
  const std::string text = serialize(sample_documents()[0]);
  EXPECT_LT(text.find("\"genus_source\""), text.find("\"input\""));
  EXPECT_LT(text.find("\"input\""), text.find("\"method\""));
  EXPECT_LT(text.find("\"total\""), text.find("\"total_float\""));
}

TEST(ReportDocument, RejectsNonCanonicalRationals) {
  const std::string text = serialize(sample_documents()[0]);
  auto j = nlohmann::json::parse(text);
  j["total"]["3"] = "2/4";
  EXPECT_THROW(document_from_json(j), InvalidInput);
  j = nlohmann::json::parse(text);
  j["total"]["4"] = "1";
  EXPECT_THROW(document_from_json(j), InvalidInput);
  j = nlohmann::json::parse(text);
  j["total"]["5"] = "0";
  EXPECT_THROW(document_from_json(j), InvalidInput);
  j = nlohmann::json::parse(text);
  j.erase("rows");
  EXPECT_THROW(document_from_json(j), InvalidInput);
  EXPECT_THROW(parse_document("{not json"), InvalidInput);
}

TEST(ReportDocument, TableShowsEveryExactValue) {
  for (const auto& doc : sample_documents()) {
    const std::string table = render_table(doc);
    EXPECT_NE(table.find("prefactor: " + doc.prefactor), std::string::npos);
    EXPECT_NE(table.find("total: " + render_log_terms(doc.total)), std::string::npos);
    for (const auto& row : doc.rows) EXPECT_NE(table.find(render_log_terms(row.contribution)), std::string::npos);
    for (const auto& [p, c] : doc.total) EXPECT_NE(table.find(c == "1" ? "log(" + std::to_string(p) + ")" : c), std::string::npos);
  }
}

TEST(ReportDocument, FloatCarriesFifteenSignificantDigits) {
  EXPECT_EQ(round_sig15(1.2424533248940002), 1.24245332489400);
  EXPECT_EQ(format_float(to_document(explicit_total(make(-3, -4))).total_float), "1.242453324894");
}
