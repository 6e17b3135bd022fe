#pragma once

#include <string>
#include <string_view>

#include "rayleigh/cli/config.hpp"

namespace rayleigh::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitWinding = 3,
  kExitVerify = 4,
  kExitNumeric = 5,
};

struct CommandResult {
  int exit_code = kExitOk;
  Json report;          ///< {command, config_echo, results, checks}
  std::string csv;      ///< grid data; empty for report-only commands
  bool has_csv = false;
};

CommandResult run_eval(const RunConfig& cfg, unsigned threads);
CommandResult run_root(const RunConfig& cfg, unsigned threads);
CommandResult run_scan(const RunConfig& cfg, unsigned threads);
CommandResult run_verify(const RunConfig& cfg, unsigned threads);
CommandResult run_existence_map(const RunConfig& cfg, unsigned threads);

/// Dispatch by name: eval, root, scan, verify, existence-map. Throws
/// ConfigError for an unknown command.
CommandResult run_command(std::string_view command, const RunConfig& cfg, unsigned threads);

bool is_known_command(std::string_view command) noexcept;

}  // namespace rayleigh::cli
