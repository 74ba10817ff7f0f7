// heegner: command-line front end for the intersection drivers.
//
//   heegner explicit   --d1 -3 --d2 -4 --nplus 1 --nminus 1 [--m M] [--h H] [--format table|json]
//   heegner repnum     ... [--genus-source local|lattice] [--alpha closed-form|gross-keating]
//   heegner crosscheck ...
//   heegner h-classes  --d1 -7 --d2 -4 --nplus 2 --nminus 1
//   heegner validate   ...
//
// Exit status: 0 success (trivially-zero included), 1 crosscheck mismatch,
// 2 invalid input, 3 unsupported configuration, 4 internal error.
// HEEGNER_LOG=debug prints timings on stderr.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "heegner/heegner.hpp"

namespace {

using namespace heegner;

enum Exit { kOk = 0, kMismatch = 1, kInvalid = 2, kUnsupported = 3, kInternal = 4 };

bool debug_logging() {
  const char* v = std::getenv("HEEGNER_LOG");
  return v != nullptr && std::string(v) == "debug";
}

void log_debug(const std::string& msg) {
  if (debug_logging()) std::cerr << "[heegner] " << msg << "\n";
}

int report_error(const std::string& kind, const std::string& message, int code) {
  nlohmann::json j = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << j.dump() << "\n";
  return code;
}

struct CommonArgs {
  std::int64_t d1 = 0, d2 = 0, nplus = 1, nminus = 1;
  std::optional<std::int64_t> m;
  std::string format = "table";

  HeegnerInput input() const { return {d1, d2, Level{nplus, nminus}, m}; }
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_format = true) {
  cmd->add_option("--d1", a.d1, "first discriminant (negative, 0 or 1 mod 4)")->required();
  cmd->add_option("--d2", a.d2, "second discriminant")->required();
  cmd->add_option("--nplus", a.nplus, "split part of the level")->default_val(1);
  cmd->add_option("--nminus", a.nminus, "ramified part of the level")->default_val(1);
  if (with_format)
    cmd->add_option("--format", a.format, "output format")->check(CLI::IsMember({"table", "json"}))->default_val("table");
}

/// Accepts "2", "±2", "+-2", optionally followed by " (mod 4)".
HClass parse_h_class(std::string text, std::int64_t N) {
  if (text.rfind("\xC2\xB1", 0) == 0) text = text.substr(2);
  else if (text.rfind("+-", 0) == 0) text = text.substr(2);
  std::int64_t modulus = 2 * N;
  if (const auto pos = text.find("(mod"); pos != std::string::npos) {
    const auto close = text.find(')', pos);
    if (close == std::string::npos) throw InvalidInput("malformed h-class '" + text + "'");
    modulus = std::stoll(text.substr(pos + 4, close - pos - 4));
    text = text.substr(0, pos);
  }
  std::size_t used = 0;
  std::int64_t h = 0;
  try {
    h = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw InvalidInput("malformed h-class '" + text + "'");
  }
  while (used < text.size() && text[used] == ' ') ++used;
  if (used != text.size()) throw InvalidInput("malformed h-class '" + text + "'");
  if (modulus != 2 * N) throw InvalidInput("h-class modulus must be 2N = " + std::to_string(2 * N));
  return HClass(h, modulus);
}

void emit(const IntersectionReport& r, const std::string& format) {
  const ReportDocument doc = to_document(r);
  if (format == "json") std::cout << serialize(doc);
  else std::cout << render_table(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic intersection numbers of Heegner divisors on Shimura curves"};
  app.set_help_flag("--help", "print help");  // -h is taken by the h-class flag
  app.require_subcommand(1);

  CommonArgs ex_args, rep_args, cc_args, hc_args, val_args;
  std::string h_text;
  std::string genus_text = "local";
  std::string alpha_text = "closed-form";

  auto* ex = app.add_subcommand("explicit", "sum of L'(0) over n");
  add_common(ex, ex_args);
  ex->add_option("--m", ex_args.m, "degree parameter; omit to normalize eta to 1");
  ex->add_option("--h", h_text, "restrict to one orientation class h (mod 2N)");

  auto* rep = app.add_subcommand("repnum", "genus term times local multiplicity, summed over n and p");
  add_common(rep, rep_args);
  rep->add_option("--m", rep_args.m, "degree parameter; omit to normalize eta to 1");
  rep->add_option("--genus-source", genus_text, "local | lattice")
      ->check(CLI::IsMember({"local", "lattice"}))
      ->default_val("local");
  rep->add_option("--alpha", alpha_text, "closed-form | gross-keating")
      ->check(CLI::IsMember({"closed-form", "gross-keating"}))
      ->default_val("closed-form");

  auto* cc = app.add_subcommand("crosscheck", "compare every evaluation path");
  add_common(cc, cc_args);
  cc->add_option("--m", cc_args.m, "degree parameter; omit to normalize eta to 1");

  auto* hc = app.add_subcommand("h-classes", "list orientation classes h (mod 2N)");
  add_common(hc, hc_args);

  auto* val = app.add_subcommand("validate", "screen an input");
  add_common(val, val_args);
  val->add_option("--m", val_args.m, "degree parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kInvalid);
  }

  const auto t0 = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (*ex) {
      const HeegnerInput in = ex_args.input();
      const IntersectionReport r =
          h_text.empty() ? explicit_total(in) : explicit_pair(in, parse_h_class(h_text, in.level.N()));
      emit(r, ex_args.format);
    } else if (*rep) {
      const GenusSource g = genus_text == "lattice" ? GenusSource::lattice_oracle : GenusSource::local_formula;
      const AlphaSource a = alpha_text == "gross-keating" ? AlphaSource::gross_keating : AlphaSource::closed_form;
      emit(repnum_total(rep_args.input(), g, a), rep_args.format);
    } else if (*cc) {
      const CrosscheckReport c = crosscheck(cc_args.input());
      if (cc_args.format == "json") {
        std::cout << crosscheck_json(c).dump(2) << "\n";
      } else {
        std::cout << "status: " << to_string(c.status);
        if (!c.reason.empty()) std::cout << " (" << c.reason << ")";
        std::cout << "\nexplicit:                 " << c.explicit_total.to_string()
                  << "\nrepnum (local formula):   " << c.repnum_local.to_string()
                  << "\nrepnum (local, GK alpha): " << c.repnum_local_gk.to_string()
                  << "\nrepnum (lattice oracle):  "
                  << (c.repnum_lattice ? c.repnum_lattice->to_string() : "skipped: " + c.lattice_note)
                  << "\nresult: " << (c.passed() ? "equal" : "MISMATCH") << "\n";
      }
      if (!c.passed()) code = kMismatch;
    } else if (*hc) {
      const HeegnerInput in = hc_args.input();
      const ValidationReport v = validate(in);
      if (v.status == ValidationReport::Status::invalid) throw InvalidInput(v.reason);
      const auto classes = h_classes(in.d1, in.d2, in.level);
      if (hc_args.format == "json") {
        std::cout << h_classes_json(in.level, classes).dump(2) << "\n";
      } else {
        for (const auto& c : classes) std::cout << c.to_string() << "\n";
      }
    } else if (*val) {
      const HeegnerInput in = val_args.input();
      const ValidationReport v = validate(in);
      if (val_args.format == "json") {
        std::cout << validation_json(in, v).dump(2) << "\n";
      } else {
        std::cout << to_string(v.status);
        if (!v.reason.empty()) std::cout << ": " << v.reason;
        std::cout << "\n";
      }
      if (v.status == ValidationReport::Status::invalid) code = kInvalid;
    }
  } catch (const InvalidInput& e) {
    return report_error("invalid-input", e.what(), kInvalid);
  } catch (const UnsupportedConfiguration& e) {
    return report_error("unsupported-configuration", e.what(), kUnsupported);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), kInternal);
  }
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  log_debug("finished in " + std::to_string(ms) + " ms");
  return code;
}
