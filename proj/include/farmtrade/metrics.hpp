#pragma once

#include <optional>
#include <string>
#include <vector>

#include "farmtrade/sim_engine.hpp"

namespace farmtrade {

// Total spent buying energy (internal and grid) across all farms and steps.
double purchase_cost_total(const ScenarioReport& report);

// purchase_cost_total averaged over days; a partial trailing day counts by
// its step fraction.
double purchase_cost_daily_mean(const ScenarioReport& report);

// Total earned selling energy (internal and grid) across all farms and steps.
double sold_revenue_total(const ScenarioReport& report);

// Community grid import summed over the steps the schedule marks as
// peak-tier. The overload without a schedule uses the report's own.
double peak_grid_import(const ScenarioReport& report, const TariffSchedule& schedule);
double peak_grid_import(const ScenarioReport& report);

// (variant - base) / base * 100; nullopt when base == 0.
std::optional<double> percent_delta(double base, double variant);

struct MetricDelta {
    std::string variant_id;
    std::string metric;
    double base_value = 0;
    double variant_value = 0;
    std::optional<double> delta_percent;
};

// The four headline metrics (purchase_cost_total, purchase_cost_daily_mean,
// sold_revenue, peak_grid_import) for each variant against the base.
std::vector<MetricDelta> comparison_metrics(const ComparisonResult& result);

} // namespace farmtrade
