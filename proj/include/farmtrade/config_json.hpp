#pragma once

#include <string>
#include <vector>

#include "farmtrade/sim_engine.hpp"

namespace farmtrade {

// A scenario plus where to find its traces. Trace paths in the file are
// resolved relative to the config file's directory.
struct LoadedScenario {
    ScenarioConfig config;
    TraceSet traces;
};

struct LoadedComparison {
    ScenarioConfig base;
    std::vector<ScenarioConfig> variants;
    TraceSet traces;
};

// Parse and validate a scenario config. Unknown keys are ConfigErrors, not
// warnings: a typoed key silently reverting to a default would skew results.
LoadedScenario load_scenario_file(const std::string& path);
ScenarioConfig parse_scenario_json(const std::string& text, const std::string& source_name);

// Comparison config: {"base": {...}, "variants": [{...}, ...]}. All entries
// share the base's horizon and draw from one trace set.
LoadedComparison load_comparison_file(const std::string& path);

// Serializes a config back to the file format. Trace refs are written as
// given; callers who want portable files should use relative paths.
std::string scenario_to_json(const ScenarioConfig& config);
std::string comparison_to_json(const ScenarioConfig& base,
                               const std::vector<ScenarioConfig>& variants);

} // namespace farmtrade
