#pragma once

#include <ostream>

namespace rayleigh::cli {

/// Entry point of the `rayleigh` tool:
///   rayleigh <eval|root|scan|verify|existence-map> --config <path> [overrides]
/// Returns the process exit code (0 ok, 2 validation, 3 winding > 0,
/// 4 verification failure, 5 numeric failure).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rayleigh::cli
