#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qma/field.hpp"
#include "qma/report.hpp"

namespace qma {

enum class PairKind { frt, re, custom };

struct SuiteConfig {
  int k = 3;
  PairKind pair = PairKind::frt;
  std::string custom_path;  // F as operator JSON when pair == custom
  Rational v = Rational(11, 10);
  int contractor_depth = 0;         // 0 selects min(3, k)
  std::vector<std::string> checks;  // empty selects every applicable group
  bool float_mode = false;
  double tolerance = 1e-9;  // float mode only
  std::string report_path;
  int workers = 1;
  int exchange_samples = 500;  // confluence words drawn when k > 2
};

// "frt", "re" or "custom:PATH"; "exact" or "float:TOL"; comma separated group
// names. Throw ParseError.
void parse_pair(std::string_view text, SuiteConfig& cfg);
void parse_mode(std::string_view text, SuiteConfig& cfg);
std::vector<std::string> parse_checks(std::string_view text);
std::string pair_text(const SuiteConfig& cfg);
std::string mode_text(const SuiteConfig& cfg);

// Group order is the report order: bmw, tower, contractors, spectral, height,
// char, structure, reciprocal, detcomm, resolution, appendix.
const std::vector<std::string>& check_group_names();
// The groups a config runs, in report order. The default omits appendix for
// k > 3. Throws ParseError on unknown names or k < 2.
std::vector<std::string> selected_groups(const SuiteConfig& cfg);

// Outcome of one arithmetic mode.
struct ModeReport {
  std::string mode;  // "exact" or "float"
  double tolerance = 0.0;
  std::vector<CheckRecord> records;  // group order, then certifier order
  std::string error;                 // construction error, empty when none
  std::string error_kind;
  std::optional<int> tau;            // component sign of α+, even k
  std::optional<bool> hypothesis_met;
  std::vector<long long> ranks_a;    // rank a^(i), i = 1..k+1
  double seconds = 0.0;

  std::size_t count(Status s) const;
};

// A check whose float verdict differs from its exact verdict. A float
// failure on an exact pass whose residual exceeds the tolerance is a
// tolerance artifact.
struct VerdictMismatch {
  std::string group;
  std::string name;
  std::string exact;
  std::string shadow;
  double residual = 0.0;
  bool tolerance_artifact = false;
};

struct ReportDocument {
  SuiteConfig config;
  std::vector<std::string> groups;
  ModeReport exact;
  std::optional<ModeReport> shadow;
  std::vector<VerdictMismatch> mismatches;
};

// Builds every object the selected groups need and runs them, up to
// cfg.workers groups at a time. Construction errors end up in the report.
ReportDocument run_suite(const SuiteConfig& cfg);
// The double-precision re-run alone, verdicts judged at cfg.tolerance.
ModeReport float_shadow(const SuiteConfig& cfg);
std::vector<VerdictMismatch> compare_verdicts(const ModeReport& exact, const ModeReport& shadow);

// 0 when every exact check passed, 1 on a failed check, 2 on a
// construction or parameter error.
int exit_code(const ReportDocument& doc);

// Deterministic for a given config once timings are left out; timings live
// under the single top-level "timings" key.
nlohmann::json report_json(const ReportDocument& doc, bool timings = true);

}  // namespace qma
