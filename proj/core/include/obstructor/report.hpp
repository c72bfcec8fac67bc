#pragma once

#include <string>
#include <string_view>

#include "obstructor/obstruction.hpp"

namespace obstructor {

// Pretty-printed JSON with a fixed key order. Without timing the output depends only on
// the scenario, seed and caps.
std::string serialize_report(const ObstructionReport& report, bool include_timing = true);
// Inverse of serialize_report. Throws SchemaError.
ObstructionReport parse_report(std::string_view text);

std::string render_text(const ObstructionReport& report);

}  // namespace obstructor
