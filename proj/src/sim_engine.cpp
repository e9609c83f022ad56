#include "farmtrade/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <unordered_map>

namespace farmtrade {

void ScenarioConfig::validate() const {
    if (scenario_id.empty()) {
        throw ConfigError("scenario_id must not be empty");
    }
    if (horizon_steps < 1) {
        throw ConfigError("horizon_steps must be at least 1");
    }
    if (farms.empty()) {
        throw ConfigError("scenario needs at least one farm");
    }
    std::set<std::string> ids;
    for (const FarmConfig& farm : farms) {
        if (farm.farm_id.empty()) {
            throw ConfigError("farm_id must not be empty");
        }
        if (!ids.insert(farm.farm_id).second) {
            throw ConfigError("duplicate farm_id: " + farm.farm_id);
        }
        if (farm.load_trace_ref.empty()) {
            throw ConfigError("farm " + farm.farm_id + " has no load trace");
        }
        if (farm.has_pv && farm.pv_trace_ref.empty()) {
            throw ConfigError("farm " + farm.farm_id + " has PV but no PV trace");
        }
        if (farm.has_wind && farm.wind_trace_ref.empty()) {
            throw ConfigError("farm " + farm.farm_id + " has wind but no wind trace");
        }
        if (farm.has_battery) {
            farm.battery_spec.validate();
            if (farm.initial_soc_percent < 0.0 || farm.initial_soc_percent > 100.0) {
                throw ConfigError("farm " + farm.farm_id +
                                  " initial state of charge outside [0, 100]");
            }
        }
    }
}

namespace {

constexpr double kLedgerTolerance = 1e-9;

// Steps read their hour's value through this view; alignment was checked up
// front so indexing is unconditional.
struct FarmTraces {
    const EnergyTrace* load = nullptr;
    const EnergyTrace* pv = nullptr;
    const EnergyTrace* wind = nullptr;
};

const EnergyTrace& resolve_trace(const TraceSet& traces, const std::string& ref,
                                 const ScenarioConfig& config, const std::string& farm_id,
                                 const char* kind) {
    const auto it = traces.find(ref);
    if (it == traces.end()) {
        throw DataError("farm " + farm_id + ": " + kind + " trace '" + ref + "' not found");
    }
    const EnergyTrace& trace = it->second;
    trace.validate();
    if (static_cast<std::int64_t>(trace.values.size()) < config.horizon_steps) {
        throw DataError("farm " + farm_id + ": trace '" + ref + "' has " +
                        std::to_string(trace.values.size()) + " steps, horizon needs " +
                        std::to_string(config.horizon_steps));
    }
    if (trace.start_epoch_hour != config.start_epoch_hour) {
        throw DataError("farm " + farm_id + ": trace '" + ref + "' starts at " +
                        iso8601_from_epoch_hours(trace.start_epoch_hour) +
                        ", scenario starts at " +
                        iso8601_from_epoch_hours(config.start_epoch_hour));
    }
    return trace;
}

} // namespace

ScenarioReport run_simulation(const ScenarioConfig& config, const TraceSet& traces) {
    config.validate();

    std::vector<FarmTraces> farm_traces(config.farms.size());
    std::vector<std::optional<BatteryState>> batteries(config.farms.size());
    for (std::size_t f = 0; f < config.farms.size(); ++f) {
        const FarmConfig& farm = config.farms[f];
        farm_traces[f].load = &resolve_trace(traces, farm.load_trace_ref, config, farm.farm_id,
                                             "load");
        if (farm.has_pv) {
            farm_traces[f].pv = &resolve_trace(traces, farm.pv_trace_ref, config, farm.farm_id,
                                               "pv");
        }
        if (farm.has_wind) {
            farm_traces[f].wind = &resolve_trace(traces, farm.wind_trace_ref, config,
                                                 farm.farm_id, "wind");
        }
        if (farm.has_battery) {
            batteries[f] = BatteryState{farm.initial_soc_percent};
        }
    }

    ScenarioReport report;
    report.scenario_id = config.scenario_id;
    report.p2p_enabled = config.p2p_enabled;
    report.seed = config.seed;
    report.tariff = config.tariff;
    report.steps.reserve(static_cast<std::size_t>(config.horizon_steps));
    report.ledger.reserve(static_cast<std::size_t>(config.horizon_steps));
    report.farm_totals.resize(config.farms.size());
    for (std::size_t f = 0; f < config.farms.size(); ++f) {
        report.farm_totals[f].farm_id = config.farms[f].farm_id;
    }

    std::vector<FarmDecision> decisions(config.farms.size());
    std::vector<StepInputs> inputs(config.farms.size());

    for (std::int64_t step = 0; step < config.horizon_steps; ++step) {
        const std::int64_t epoch = config.start_epoch_hour + step;
        const int hod = hour_of_day(epoch);
        const TariffTier tier = tier_for_hour(hod, config.tariff);
        const double lambda_buy = grid_price(tier, config.tariff);
        const auto idx = static_cast<std::size_t>(step);

        // Stage 1: every farm decides from its own inputs and battery state.
        for (std::size_t f = 0; f < config.farms.size(); ++f) {
            const FarmConfig& farm = config.farms[f];
            StepInputs in;
            in.e_load = farm_traces[f].load->values[idx];
            in.e_pv = farm.has_pv ? farm_traces[f].pv->values[idx] : 0.0;
            in.e_wind = farm.has_wind ? farm_traces[f].wind->values[idx] : 0.0;
            in.tier = tier;
            inputs[f] = in;
            decisions[f] = decide_step(in, batteries[f], farm);
        }

        // Stage 2+3: aggregate the book, quote prices, clear.
        OrderBook book;
        book.tier = tier;
        book.step_index = step;
        for (std::size_t f = 0; f < config.farms.size(); ++f) {
            if (decisions[f].sell) {
                book.offers.push_back({config.farms[f].farm_id, decisions[f].e_sell});
            } else if (decisions[f].buy) {
                book.bids.push_back({config.farms[f].farm_id, decisions[f].e_buy});
            }
        }
        const MarketResult market = clear_market(book, config.tariff, config.p2p_enabled);
        std::unordered_map<std::string, const FarmSettlement*> settled;
        for (const FarmSettlement& s : market.settlements) settled[s.farm_id] = &s;

        StepRecord record;
        record.step = step;
        record.hour_of_day = hod;
        record.epoch_hour = epoch;
        record.tier = tier;
        record.tsp = market.tsp;
        record.tbp = market.tbp;
        record.sdr = market.quote.sdr;
        record.isp = market.quote.isp;
        record.ibp = market.quote.ibp;
        record.grid_import_kwh = market.grid_import_kwh;
        record.grid_export_kwh = market.grid_export_kwh;

        // Stage 4+5: commit batteries, then close each farm's energy ledger,
        // buying unplaced shortfalls from the grid and clamping unplaced
        // surplus.
        std::vector<LedgerRow> rows(config.farms.size());
        for (std::size_t f = 0; f < config.farms.size(); ++f) {
            const FarmConfig& farm = config.farms[f];
            const FarmDecision& decision = decisions[f];

            double battery_clamp = 0.0;
            if (farm.has_battery) {
                const BatteryTransition transition =
                    apply_transition(*batteries[f], farm.battery_spec, decision.charged_kwh,
                                     decision.discharged_kwh);
                batteries[f] = transition.state;
                battery_clamp = transition.clamped_kwh;
            }

            LedgerRow& row = rows[f];
            row.farm_id = farm.farm_id;
            row.generation_kwh = (farm.has_pv ? inputs[f].e_pv : 0.0) +
                                 (farm.has_wind ? inputs[f].e_wind : 0.0);
            row.load_kwh = inputs[f].e_load;
            row.charged_kwh = decision.charged_kwh - battery_clamp;
            row.discharged_kwh = decision.discharged_kwh;
            row.soc_percent_after = farm.has_battery ? batteries[f]->soc_percent : 0.0;
            if (const auto it = settled.find(farm.farm_id); it != settled.end()) {
                row.bought_internal_kwh = it->second->bought_internal_kwh;
                row.bought_grid_kwh = it->second->bought_grid_kwh;
                row.sold_internal_kwh = it->second->sold_internal_kwh;
                row.sold_grid_kwh = it->second->sold_grid_kwh;
                row.cost = it->second->cost;
                row.revenue = it->second->revenue;
            }

            if (!decision.rule_trace.empty() &&
                decision.rule_trace.back() == rules::hold_uncovered) {
                std::string detail;
                for (const std::string& rule : decision.rule_trace) {
                    if (!detail.empty()) detail += '>';
                    detail += rule;
                }
                report.events.push_back({step, farm.farm_id, "hold", 0.0, detail});
            }

            // Imbalance of the literal decision, gross of battery clamping.
            const double balance = row.generation_kwh + row.discharged_kwh +
                                   row.bought_internal_kwh + row.bought_grid_kwh -
                                   row.load_kwh - decision.charged_kwh -
                                   row.sold_internal_kwh - row.sold_grid_kwh;
            if (balance < -kLedgerTolerance) {
                const double shortfall = -balance;
                row.bought_grid_kwh += shortfall;
                row.reconciled_kwh = shortfall;
                row.cost += shortfall * lambda_buy;
                record.grid_import_kwh += shortfall;
                report.events.push_back({step, farm.farm_id, "reconcile_grid_buy", shortfall,
                                         ""});
            }
            const double excess = std::max(balance, 0.0);
            row.clamp_residual_kwh = battery_clamp + excess;
            if (battery_clamp > kLedgerTolerance) {
                report.events.push_back({step, farm.farm_id, "battery_clamp", battery_clamp,
                                         ""});
            }
            if (excess > kLedgerTolerance) {
                report.events.push_back({step, farm.farm_id, "excess_clamp", excess, ""});
            }

            const double closed = row.generation_kwh + row.discharged_kwh +
                                  row.bought_internal_kwh + row.bought_grid_kwh -
                                  row.load_kwh - row.charged_kwh - row.sold_internal_kwh -
                                  row.sold_grid_kwh - row.clamp_residual_kwh;
            if (std::abs(closed) > kLedgerTolerance) {
                throw InvariantError("ledger imbalance of " + std::to_string(closed) +
                                     " kWh at step " + std::to_string(step) + " for farm " +
                                     farm.farm_id);
            }

            record.community_cost += row.cost;
            record.community_revenue += row.revenue;

            FarmTotals& totals = report.farm_totals[f];
            totals.bought_kwh += row.bought_internal_kwh + row.bought_grid_kwh;
            totals.sold_kwh += row.sold_internal_kwh + row.sold_grid_kwh;
            totals.cost += row.cost;
            totals.revenue += row.revenue;
        }

        report.totals.purchase_cost += record.community_cost;
        report.totals.sold_revenue += record.community_revenue;
        report.totals.grid_import_kwh += record.grid_import_kwh;
        report.totals.grid_export_kwh += record.grid_export_kwh;
        report.totals.auctioneer_imbalance += market.auctioneer_imbalance;

        report.steps.push_back(record);
        report.ledger.push_back(std::move(rows));
    }

    for (FarmTotals& totals : report.farm_totals) {
        totals.cash_delta = totals.revenue - totals.cost;
    }
    return report;
}

ComparisonResult run_comparison(const ScenarioConfig& base,
                                const std::vector<ScenarioConfig>& variants,
                                const TraceSet& traces) {
    for (const ScenarioConfig& variant : variants) {
        if (variant.horizon_steps != base.horizon_steps) {
            throw ConfigError("variant " + variant.scenario_id + " has horizon " +
                              std::to_string(variant.horizon_steps) + ", base has " +
                              std::to_string(base.horizon_steps));
        }
        if (variant.start_epoch_hour != base.start_epoch_hour) {
            throw ConfigError("variant " + variant.scenario_id +
                              " does not share the base start time");
        }
    }
    ComparisonResult result;
    result.base = run_simulation(base, traces);
    result.variants.reserve(variants.size());
    for (const ScenarioConfig& variant : variants) {
        result.variants.push_back(run_simulation(variant, traces));
    }
    return result;
}

} // namespace farmtrade
