#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "edgroups/report.hpp"

namespace edg {

struct GlobalOptions {
  std::uint64_t seed = 0;
  double tol = 1e-7;  // residual threshold; other thresholds scale with it
  int starts = 1000;
  bool timing = false;  // adds elapsed_ms, which makes output run-dependent
};

/// Exit codes: 0 success, 1 verification failure, 2 parse or validation
/// error, 3 numerical degeneracy, 4 unsupported.
struct CommandResult {
  int exit_code = 0;
  std::optional<RunReport> report;
  std::string out;  // stdout
  std::string err;  // stderr
};

CommandResult cmd_nearest(const std::string& group, const std::string& input,
                          const std::optional<std::string>& component, const GlobalOptions& options);
CommandResult cmd_critical(const std::string& group, const std::string& input, const GlobalOptions& options);
CommandResult cmd_verify(const std::string& suite, const GlobalOptions& options);
CommandResult cmd_bkk(const std::string& weightset, const GlobalOptions& options);

}  // namespace edg
