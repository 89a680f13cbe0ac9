#pragma once

#include <string>
#include <vector>

namespace chainlab::cli {

/// Exit statuses: 0 success or pass, 1 a check failed, 2 usage or input error.
struct Outcome {
  int status = 0;
  std::string out;
  std::string err;
};

/// Runs one subcommand; `args` excludes the program name. The default ring
/// comes from --ring, then CHAINLAB_RING, then Z.
Outcome run_command(const std::vector<std::string>& args);

const std::vector<std::string>& subcommands();

/// Which subcommand reaches each library operation.
struct CoverageEntry {
  std::string module;
  std::string operation;
  std::string subcommand;
};

const std::vector<CoverageEntry>& operation_coverage();

}  // namespace chainlab::cli
