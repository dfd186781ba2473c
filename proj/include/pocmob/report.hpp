#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pocmob/mobility.hpp"
#include "pocmob/screw_oracle.hpp"

namespace pocmob {

inline constexpr int kReportFormatVersion = 1;

struct LegSummary {
  int label = 0;
  int f = 0;
  std::string segments;  // "S2[1-2] P[3]"
  std::array<int, kPocColumns> t{};
  std::array<int, kPocColumns> r{};
  int xi_t = 0;
  int xi_r = 0;
  bool operator==(const LegSummary&) const = default;
};

struct OracleSummary {
  int seeds = 0;
  int agreeing = 0;
  std::uint64_t base_seed = 0;
  bool seed_stable = true;
  std::vector<std::string> mismatches;  // "seed 17: loop ranks (6,3) vs (3,3)"
  bool all_agree() const { return agreeing == seeds && seed_stable; }
  bool operator==(const OracleSummary&) const = default;
};

/// Everything a rendered report shows; the structured form is this struct
/// serialized, so it round-trips exactly.
struct ReportSummary {
  std::string mechanism;
  int dof = 0;
  std::string dof_label;
  std::string classification;
  bool rigid = false;
  int sum_f = 0;
  std::vector<LegSummary> legs;
  std::vector<LoopRank> loops;
  std::array<int, kPocColumns> t{};
  std::array<int, kPocColumns> r{};
  std::array<int, 2> owners{};  // translation leg, rotation leg
  std::string translation;
  std::string rotation;
  std::vector<TraceStep> trace;
  std::vector<std::string> warnings;
  std::optional<OracleSummary> oracle;

  bool operator==(const ReportSummary&) const = default;
};

ReportSummary summarize(const MobilityReport& report, std::vector<std::string> warnings = {});
OracleSummary summarize(const OracleComparison& cmp, std::uint64_t base_seed);

/// Plain-text report. With `trace` every step of the analysis flow is listed.
std::string render_human(const ReportSummary& s, bool trace);

/// JSON document carrying `format_version`.
std::string render_structured(const ReportSummary& s);
/// Several reports as one JSON array.
std::string render_structured(const std::vector<ReportSummary>& all);

class ReportFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ReportSummary parse_structured(std::string_view text);

}  // namespace pocmob
