#include "pocmob/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "pocmob/mechanism_file.hpp"
#include "pocmob/report.hpp"

namespace pocmob::cli {

namespace {

struct Options {
  std::vector<std::string> files;
  bool trace = false;
  std::string format = "human";
  bool oracle = false;
  int seeds = 20;
  std::string policy = "general";
  std::uint64_t seed = kDefaultOracleSeed;
};

struct Outcome {
  int code = kOk;
  std::optional<ReportSummary> summary;
  std::string diagnostics;
};

Outcome analyze_file(const std::string& path, const Options& opt) {
  Outcome o;
  std::ostringstream diag;
  auto done = [&](int code) {
    o.code = code;
    o.diagnostics = diag.str();
    return o;
  };

  std::ifstream in(path, std::ios::binary);
  if (!in) {
    diag << "pocmob: cannot read '" << path << "'\n";
    return done(kParseError);
  }
  std::ostringstream text;
  text << in.rdbuf();

  ParsedMechanism parsed;
  try {
    parsed = parse_mechanism(text.str());
  } catch (const ParseError& e) {
    diag << path << ':' << e.line() << ':' << e.column() << ": error: " << e.message() << '\n';
    return done(kParseError);
  }
  for (const auto& w : parsed.warnings) diag << path << ": warning: " << w << '\n';

  MobilityReport report;
  try {
    const auto policy = opt.policy == "strict" ? RelationPolicy::Strict : RelationPolicy::GeneralPosition;
    report = analyze_mechanism(parsed.mechanism, policy);
  } catch (const std::exception& e) {
    diag << path << ": analysis error: " << e.what() << '\n';
    return done(kAnalysisError);
  }
  o.summary = summarize(report, parsed.warnings);

  int code = kOk;
  if (opt.oracle) {
    try {
      const auto cmp = compare_with_oracle(parsed.mechanism, report, opt.seeds, opt.seed);
      o.summary->oracle = summarize(cmp, opt.seed);
      if (!cmp.all_agree()) code = kOracleDisagreement;
    } catch (const Unsatisfiable& e) {
      diag << path << ": oracle error: " << e.what() << '\n';
      code = kOracleDisagreement;
    }
  }
  return done(code);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mobility and POC analysis of parallel mechanisms", "pocmob"};
  app.require_subcommand(1);
  Options opt;
  auto* analyze = app.add_subcommand("analyze", "Analyze mechanism description files");
  analyze->add_option("files", opt.files, "Mechanism description files")->required();
  analyze->add_flag("--trace", opt.trace, "List every step of the analysis");
  analyze->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"human", "structured"}))
      ->capture_default_str();
  analyze->add_flag("--oracle", opt.oracle, "Cross-check against the numeric screw oracle");
  analyze->add_option("--seeds", opt.seeds, "Oracle sample count")->check(CLI::PositiveNumber)->capture_default_str();
  analyze->add_option("--policy", opt.policy, "Handling of undetermined axis relations")
      ->check(CLI::IsMember({"general", "strict"}))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kParseError;
  }

  if (const char* env = std::getenv("POC_SEED")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (!*env || *end) {
      err << "pocmob: POC_SEED must be an unsigned integer, got '" << env << "'\n";
      return kParseError;
    }
    opt.seed = v;
  }

  std::vector<std::future<Outcome>> jobs;
  for (const auto& f : opt.files) jobs.push_back(std::async(std::launch::async, analyze_file, f, std::cref(opt)));

  int code = kOk;
  std::vector<ReportSummary> summaries;
  bool first = true;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto o = jobs[i].get();
    err << o.diagnostics;
    code = std::max(code, o.code);
    if (!o.summary) continue;
    if (opt.format == "structured") {
      summaries.push_back(std::move(*o.summary));
      continue;
    }
    if (!first) out << '\n';
    if (opt.files.size() > 1) out << "==> " << opt.files[i] << " <==\n";
    out << render_human(*o.summary, opt.trace);
    first = false;
  }
  if (opt.format == "structured") {
    if (opt.files.size() == 1 && summaries.size() == 1) out << render_structured(summaries.front());
    else out << render_structured(summaries);
  }
  return code;
}

}  // namespace pocmob::cli
