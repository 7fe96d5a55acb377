// config.hpp - Flat key=value config files for scenarios and design runs.
//
// Lines are "key=value"; blank lines and lines starting with '#' are
// ignored. Unknown keys and out-of-range values raise std::runtime_error
// with the offending line number.

#pragma once

#include <map>
#include <string>

#include "ota/designer.hpp"
#include "ota/simulator.hpp"

namespace ota {

ScenarioConfig load_scenario_config(const std::string& path);
DesignConfig load_design_config(const std::string& path);

// Parsed key=value pairs with line numbers (shared by both loaders).
std::map<std::string, std::pair<std::string, int>> parse_keyvalue_file(const std::string& path);

std::string scenario_to_string(const ScenarioConfig& cfg);
std::string design_to_string(const DesignConfig& cfg);

}  // namespace ota
