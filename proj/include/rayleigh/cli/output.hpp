#pragma once

#include <ostream>
#include <string>

#include "rayleigh/cli/config.hpp"

namespace rayleigh::cli {

/// Scientific notation with 17 significant digits ("%.16e"); nan, inf, -inf
/// for non-finite values. Round-trips every double exactly.
std::string format_number(double x);

/// Pretty-printed JSON with two-space indentation. Floating-point values use
/// format_number (non-finite ones become null); integers print as integers.
void write_json(std::ostream& out, const Json& doc);

std::string to_json_text(const Json& doc);

}  // namespace rayleigh::cli
