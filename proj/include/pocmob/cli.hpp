#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pocmob::cli {

enum ExitCode : int {
  kOk = 0,
  kAnalysisError = 1,
  kParseError = 2,
  kOracleDisagreement = 3,
};

/// `pocmob analyze <file>... [--trace] [--format human|structured] [--oracle]
/// [--seeds N] [--policy general|strict]`. `args` excludes the program name.
/// Several files are analyzed concurrently; the exit code is the largest one.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pocmob::cli
