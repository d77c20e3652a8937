#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lightcone/cli/config.hpp"

namespace lightcone::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,       // unclassified error
  kExitUsage = 2,
  kExitMissingFile = 3,
  kExitParse = 4,
  kExitValidation = 5,
  kExitInvariant = 6,     // a recorded check failed, or InvariantViolation
  kExitResource = 7,
  kExitConvergence = 8,
  kExitArgument = 9,
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputEnv = "LIGHTCONE_OUT";

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;  // overrides config and environment
  unsigned threads = 1;
  bool emit_plot = false;
};

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double limit = 0.0;
};

struct RunResult {
  std::filesystem::path out_dir;
  std::vector<std::filesystem::path> files;
  std::vector<Check> checks;
  bool pass() const;
  int exit_code() const { return pass() ? kExitOk : kExitInvariant; }
};

/// Output directory precedence: options.out_dir, config.output_dir,
/// $LIGHTCONE_OUT, then "lightcone_out".
std::filesystem::path resolve_output_dir(const RunConfig& config, const RunOptions& options);

/// Runs the configured experiment and writes trace.tsv, summary.json and,
/// when requested, plot.gp. On any exception the files written so far are
/// removed and the exception propagates.
RunResult run(const RunConfig& config, const RunOptions& options = {});

/// Maps the in-flight exception to an exit code. Call from a catch block.
int exit_code_for_current_exception();

}  // namespace lightcone::cli
