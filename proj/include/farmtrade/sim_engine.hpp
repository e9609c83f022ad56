#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "farmtrade/farm_agent.hpp"
#include "farmtrade/market.hpp"
#include "farmtrade/tariff.hpp"
#include "farmtrade/trace.hpp"

namespace farmtrade {

struct ScenarioConfig {
    std::string scenario_id;
    std::vector<FarmConfig> farms;
    TariffSchedule tariff = TariffSchedule::defaults();
    bool p2p_enabled = true;
    std::int64_t horizon_steps = 0;
    std::uint64_t seed = 0;
    std::int64_t start_epoch_hour = default_trace_start();

    void validate() const; // throws ConfigError
};

// Traces keyed by the refs farms point at. A missing or short trace is a
// DataError at simulation start, not at the step that needs it.
using TraceSet = std::map<std::string, EnergyTrace>;

// Community-level view of one step, in report column order.
struct StepRecord {
    std::int64_t step = 0;
    int hour_of_day = 0;
    std::int64_t epoch_hour = 0;
    TariffTier tier = TariffTier::Day;
    double tsp = 0;
    double tbp = 0;
    std::optional<double> sdr;
    double isp = 0;
    double ibp = 0;
    double grid_import_kwh = 0; // market fills plus reconciliation buys
    double grid_export_kwh = 0;
    double community_cost = 0;
    double community_revenue = 0;
};

// Per-farm per-step energy ledger. Conservation:
//   generation + discharged + bought_internal + bought_grid
//     == load + charged + sold_internal + sold_grid + clamp_residual
// charged is net of battery clamping; clamp_residual absorbs both the
// clamped charge and any surplus no rule disposed of.
struct LedgerRow {
    std::string farm_id;
    double generation_kwh = 0;
    double load_kwh = 0;
    double charged_kwh = 0;
    double discharged_kwh = 0;
    double bought_internal_kwh = 0;
    double bought_grid_kwh = 0;
    double sold_internal_kwh = 0;
    double sold_grid_kwh = 0;
    double clamp_residual_kwh = 0;
    double reconciled_kwh = 0; // portion of bought_grid added to close the ledger
    double soc_percent_after = 0;
    double cost = 0;
    double revenue = 0;
};

// Anything a step did that is not visible in the bulletin: holds, ledger
// reconciliation buys, battery clamps, discarded surplus.
struct StepEvent {
    std::int64_t step = 0;
    std::string farm_id;
    std::string kind;   // "hold" | "reconcile_grid_buy" | "battery_clamp" | "excess_clamp"
    double amount_kwh = 0;
    std::string detail; // rule trace for holds, empty otherwise
};

struct FarmTotals {
    std::string farm_id;
    double bought_kwh = 0; // internal + grid
    double sold_kwh = 0;
    double cost = 0;
    double revenue = 0;
    double cash_delta = 0;
};

struct ScenarioTotals {
    double purchase_cost = 0;
    double sold_revenue = 0;
    double grid_import_kwh = 0;
    double grid_export_kwh = 0;
    double auctioneer_imbalance = 0;
};

struct ScenarioReport {
    std::string scenario_id;
    bool p2p_enabled = true;
    std::uint64_t seed = 0;
    std::vector<StepRecord> steps;
    std::vector<std::vector<LedgerRow>> ledger; // [step][farm], farms in config order
    std::vector<StepEvent> events;
    std::vector<FarmTotals> farm_totals; // config order
    ScenarioTotals totals;
    TariffSchedule tariff = TariffSchedule::defaults();
};

// Runs the scenario over its horizon: per farm rule evaluation, market
// clearing, battery transitions, ledger reconciliation. Deterministic in
// (config, traces); throws InvariantError if any step's ledger fails to
// close within 1e-9 kWh.
ScenarioReport run_simulation(const ScenarioConfig& config, const TraceSet& traces);

struct ComparisonResult {
    ScenarioReport base;
    std::vector<ScenarioReport> variants;
};

// Base and variants share the trace set so the deltas isolate config
// differences.
ComparisonResult run_comparison(const ScenarioConfig& base,
                                const std::vector<ScenarioConfig>& variants,
                                const TraceSet& traces);

} // namespace farmtrade
