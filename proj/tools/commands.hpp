#pragma once

#include <string>
#include <vector>

namespace isokit::cli {

/// Exit codes shared by every subcommand.
enum Exit : int { kOk = 0, kInputError = 2, kBoundViolation = 3 };

struct CommandResult {
  int exit_code = kOk;
  std::string output;  // the JSON document written to stdout
};

/// Runs the command line `args` (without the program name) and returns the
/// output instead of printing it, so tests can drive the CLI in-process.
CommandResult run(const std::vector<std::string>& args);

}  // namespace isokit::cli
