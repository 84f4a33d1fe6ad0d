// Flat key = value scenario files. Missing keys fall back to the default
// parameter set; unknown keys and malformed lines are rejected with the
// offending line number.
#pragma once

#include <string>

#include "udnsim/simulator.hpp"

namespace udnsim {

ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

// Round-trippable dump of every field, one key = value per line.
std::string config_to_text(const ScenarioConfig& config);

}  // namespace udnsim
