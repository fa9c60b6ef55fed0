#pragma once

// Entry points of the fusionctl tool, usable in-process by tests.

#include <ostream>
#include <string>
#include <vector>

#include "fusion/jobspec.hpp"

namespace fusion {

inline constexpr const char* kEngineVersion = "fusionkit 1.0.0";
inline constexpr const char* kFormatEnv = "FUSION_FORMAT";

/// Exit codes: 0 success, 1 an asserted check failed, 2 invalid input,
/// 3 an internal invariant failed during a computation.
struct CommandResult {
  std::string output;
  int exit_code = 0;
};

/// Runs a fully resolved job. Throws InputError on invalid specs.
CommandResult run_job(const JobSpec& spec, OutputFormat format);

/// Parses argv (without the program name), runs, writes output and
/// diagnostics, and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fusion
