#pragma once

#include <string>
#include <vector>

#include "farmtrade/metrics.hpp"
#include "farmtrade/sim_engine.hpp"

namespace farmtrade {

// Step bulletin as CSV. Numeric cells are %.6f; an undefined ratio is an
// empty cell. Header:
//   step,timestamp,tier,tsp,tbp,sdr,isp,ibp,grid_import,grid_export,
//   community_cost,community_revenue
std::string report_csv(const ScenarioReport& report);

// Full report as JSON: meta, steps, per-farm ledgers, events, totals. Key
// order is fixed so reruns are byte-identical.
std::string report_json(const ScenarioReport& report);

// One JSON line per step: the bulletin plus that step's events.
std::string audit_jsonl(const ScenarioReport& report);

// Comparison table as CSV: variant_id,metric,base_value,variant_value,
// delta_percent (empty when the base is zero).
std::string comparison_csv(const std::vector<MetricDelta>& deltas);
std::string comparison_json(const ComparisonResult& result,
                            const std::vector<MetricDelta>& deltas);

// Atomic write: temp file in the target directory, then rename.
void write_text_file(const std::string& path, const std::string& content);

} // namespace farmtrade
