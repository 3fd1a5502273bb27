#pragma once

#include <filesystem>
#include <string>

#include "replenish/scenario.hpp"

namespace replenish {

/// Current scenario file schema.
inline constexpr int kSchemaVersion = 1;

/// Parses and validates a YAML scenario. Throws ScenarioError listing every
/// problem found (each with its line number where one is known).
Scenario parse_scenario_text(const std::string& text, const std::string& source = "<string>");
Scenario parse_scenario(const std::filesystem::path& path);

}  // namespace replenish
