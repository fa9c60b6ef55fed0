#pragma once

// Property-check suites run by `fusionctl check`. Asserted checks cover proven
// statements and fail the run; conjecture-level checks are reported as WARN
// when violated and never change the exit code.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fusion {

enum class CheckStatus { pass, warn, fail };

struct CheckLine {
  CheckStatus status = CheckStatus::pass;
  bool conjecture = false;
  std::string suite;
  std::string name;
  std::string detail;  // what was covered, or the failing inputs and both values

  std::string format() const;
};

struct CheckOptions {
  std::uint64_t seed = 1;
  int psi_max_k = 3;  // the psi matrix covers k <= psi_max_k, N <= 4, j <= k
};

/// suite: all | filtration | oracles | verlinde. on_line sees each line as soon
/// as it is produced.
std::vector<CheckLine> run_checks(const std::string& suite, const CheckOptions& opts,
                                  const std::function<void(const CheckLine&)>& on_line = {});

bool any_failed(const std::vector<CheckLine>& lines);

}  // namespace fusion
