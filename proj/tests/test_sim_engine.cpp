#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"

#include "farmtrade/metrics.hpp"
#include "farmtrade/report_io.hpp"
#include "farmtrade/sim_engine.hpp"
#include "farmtrade/synth_community.hpp"

using namespace farmtrade;

namespace {

EnergyTrace constant_trace(const std::string& id, double value, std::int64_t steps,
                           std::int64_t start = default_trace_start()) {
    EnergyTrace t;
    t.trace_id = id;
    t.start_epoch_hour = start;
    t.values.assign(static_cast<std::size_t>(steps), value);
    return t;
}

FarmConfig consumer(const std::string& id, const std::string& load_ref) {
    FarmConfig f;
    f.farm_id = id;
    f.load_trace_ref = load_ref;
    return f;
}

double ledger_gap(const LedgerRow& row) {
    return row.generation_kwh + row.discharged_kwh + row.bought_internal_kwh +
           row.bought_grid_kwh - row.load_kwh - row.charged_kwh - row.sold_internal_kwh -
           row.sold_grid_kwh - row.clamp_residual_kwh;
}

} // namespace

TEST_CASE("a lone consumer buys its whole load at tariff prices") {
    ScenarioConfig config;
    config.scenario_id = "lone";
    config.horizon_steps = 24;
    config.farms = {consumer("only", "load")};

    TraceSet traces;
    traces.emplace("load", constant_trace("load", 5.0, 24));

    const ScenarioReport report = run_simulation(config, traces);

    REQUIRE(report.steps.size() == 24);
    CHECK(report.farm_totals[0].bought_kwh == doctest::Approx(120.0));
    CHECK(report.totals.grid_import_kwh == doctest::Approx(120.0));
    CHECK(report.totals.grid_export_kwh == doctest::Approx(0.0));
    // 9 night hours at 0.10, 13 day at 0.18, 2 peak at 0.25, times 5 kWh.
    CHECK(report.totals.purchase_cost == doctest::Approx(18.70).epsilon(1e-9));
    CHECK(report.totals.sold_revenue == doctest::Approx(0.0));

    // With nothing to trade, disabling the market changes nothing.
    ScenarioConfig off = config;
    off.p2p_enabled = false;
    const ScenarioReport off_report = run_simulation(off, traces);
    CHECK(off_report.totals.purchase_cost == doctest::Approx(report.totals.purchase_cost));
    CHECK(off_report.totals.grid_import_kwh ==
          doctest::Approx(report.totals.grid_import_kwh));

    // Hour-aligned tier bookkeeping: step 17 is peak, step 3 night.
    CHECK(report.steps[17].tier == TariffTier::Peak);
    CHECK(report.steps[3].tier == TariffTier::Night);
    CHECK(report.steps[3].community_cost == doctest::Approx(0.5));
}

TEST_CASE("one seller and one buyer net through the pool") {
    ScenarioConfig config;
    config.scenario_id = "pair";
    config.horizon_steps = 1;
    FarmConfig turbine;
    turbine.farm_id = "turbine";
    turbine.has_wind = true;
    turbine.load_trace_ref = "t_load";
    turbine.wind_trace_ref = "t_wind";
    config.farms = {turbine, consumer("barn", "b_load")};

    TraceSet traces;
    traces.emplace("t_load", constant_trace("t_load", 5.0, 1));
    traces.emplace("t_wind", constant_trace("t_wind", 7.0, 1));
    traces.emplace("b_load", constant_trace("b_load", 10.0, 1));

    const ScenarioReport on = run_simulation(config, traces);
    REQUIRE(on.steps.size() == 1);
    const StepRecord& step = on.steps[0];
    CHECK(step.tier == TariffTier::Night); // midnight start
    CHECK(step.tsp == doctest::Approx(2.0));
    CHECK(step.tbp == doctest::Approx(10.0));
    CHECK(step.sdr.value() == doctest::Approx(0.2));
    CHECK(step.grid_import_kwh == doctest::Approx(8.0));
    CHECK(step.grid_export_kwh == doctest::Approx(0.0));
    CHECK(step.isp == doctest::Approx(0.0952381));
    CHECK(step.ibp == doctest::Approx(0.0990476));
    CHECK(on.ledger[0][0].sold_internal_kwh == doctest::Approx(2.0));
    CHECK(on.ledger[0][1].bought_internal_kwh == doctest::Approx(2.0));
    CHECK(on.ledger[0][1].bought_grid_kwh == doctest::Approx(8.0));
    CHECK(on.totals.sold_revenue == doctest::Approx(2.0 * 0.0952381).epsilon(1e-5));

    ScenarioConfig off = config;
    off.p2p_enabled = false;
    const ScenarioReport off_report = run_simulation(off, traces);
    CHECK(off_report.steps[0].grid_import_kwh == doctest::Approx(10.0));
    CHECK(off_report.steps[0].grid_export_kwh == doctest::Approx(2.0));
    CHECK(off_report.totals.sold_revenue == doctest::Approx(2.0 * 0.08));
    CHECK(off_report.totals.purchase_cost == doctest::Approx(10.0 * 0.10));
    // Trading is cheaper for the buyer and better for the seller.
    CHECK(on.totals.purchase_cost < off_report.totals.purchase_cost);
    CHECK(on.totals.sold_revenue > off_report.totals.sold_revenue);
}

TEST_CASE("every ledger row closes and batteries stay in range") {
    CommunityBlueprint blueprint;
    blueprint.horizon_steps = 240;
    const SyntheticCommunity community = build_synthetic_community(blueprint);
    const ScenarioReport report = run_simulation(community.re_p2p, community.traces);

    REQUIRE(report.ledger.size() == 240);
    for (const auto& rows : report.ledger) {
        for (const LedgerRow& row : rows) {
            CHECK(std::abs(ledger_gap(row)) <= 1e-9);
            CHECK(row.soc_percent_after >= 0.0);
            CHECK(row.soc_percent_after <= 100.0);
            CHECK(row.bought_grid_kwh >= 0.0);
            CHECK(row.clamp_residual_kwh >= -1e-9);
        }
    }

    for (const StepEvent& event : report.events) {
        const bool known = event.kind == "hold" || event.kind == "reconcile_grid_buy" ||
                           event.kind == "battery_clamp" || event.kind == "excess_clamp";
        CHECK(known);
        if (event.kind == "hold") {
            CHECK_FALSE(event.detail.empty());
        } else {
            CHECK(event.amount_kwh > 0.0);
        }
    }

    // The community grid import is the market fill plus reconciliation buys.
    for (std::size_t s = 0; s < report.steps.size(); ++s) {
        double reconciled = 0.0;
        for (const LedgerRow& row : report.ledger[s]) reconciled += row.reconciled_kwh;
        const StepRecord& rec = report.steps[s];
        const double market_fill = std::max(rec.tbp - rec.tsp, 0.0);
        CHECK(rec.grid_import_kwh == doctest::Approx(market_fill + reconciled).epsilon(1e-9));
    }
}

TEST_CASE("farm totals are the ledger column sums") {
    CommunityBlueprint blueprint;
    blueprint.horizon_steps = 96;
    const SyntheticCommunity community = build_synthetic_community(blueprint);
    const ScenarioReport report = run_simulation(community.re_p2p, community.traces);

    for (std::size_t f = 0; f < report.farm_totals.size(); ++f) {
        double bought = 0, sold = 0, cost = 0, revenue = 0;
        for (const auto& rows : report.ledger) {
            bought += rows[f].bought_internal_kwh + rows[f].bought_grid_kwh;
            sold += rows[f].sold_internal_kwh + rows[f].sold_grid_kwh;
            cost += rows[f].cost;
            revenue += rows[f].revenue;
        }
        const FarmTotals& totals = report.farm_totals[f];
        CHECK(totals.bought_kwh == doctest::Approx(bought).epsilon(1e-9));
        CHECK(totals.sold_kwh == doctest::Approx(sold).epsilon(1e-9));
        CHECK(totals.cost == doctest::Approx(cost).epsilon(1e-9));
        CHECK(totals.revenue == doctest::Approx(revenue).epsilon(1e-9));
        CHECK(totals.cash_delta == doctest::Approx(revenue - cost).epsilon(1e-9));
    }
}

TEST_CASE("the market flag changes cash flows but not energy flows") {
    CommunityBlueprint blueprint;
    blueprint.horizon_steps = 168;
    const SyntheticCommunity community = build_synthetic_community(blueprint);
    const ScenarioReport on = run_simulation(community.re_p2p, community.traces);
    const ScenarioReport off = run_simulation(community.re_only, community.traces);

    REQUIRE(on.ledger.size() == off.ledger.size());
    for (std::size_t s = 0; s < on.ledger.size(); ++s) {
        REQUIRE(on.ledger[s].size() == off.ledger[s].size());
        for (std::size_t f = 0; f < on.ledger[s].size(); ++f) {
            const LedgerRow& a = on.ledger[s][f];
            const LedgerRow& b = off.ledger[s][f];
            CHECK(a.bought_internal_kwh + a.bought_grid_kwh ==
                  doctest::Approx(b.bought_internal_kwh + b.bought_grid_kwh).epsilon(1e-9));
            CHECK(a.sold_internal_kwh + a.sold_grid_kwh ==
                  doctest::Approx(b.sold_internal_kwh + b.sold_grid_kwh).epsilon(1e-9));
            CHECK(a.charged_kwh == doctest::Approx(b.charged_kwh).epsilon(1e-9));
            CHECK(a.discharged_kwh == doctest::Approx(b.discharged_kwh).epsilon(1e-9));
            CHECK(a.clamp_residual_kwh == doctest::Approx(b.clamp_residual_kwh).epsilon(1e-9));
            CHECK(a.reconciled_kwh == doctest::Approx(b.reconciled_kwh).epsilon(1e-9));
            CHECK(a.soc_percent_after == doctest::Approx(b.soc_percent_after).epsilon(1e-9));
        }
    }
}

TEST_CASE("identical runs produce identical reports") {
    CommunityBlueprint blueprint;
    blueprint.horizon_steps = 72;
    const SyntheticCommunity community = build_synthetic_community(blueprint);
    const ScenarioReport first = run_simulation(community.re_p2p, community.traces);
    const ScenarioReport second = run_simulation(community.re_p2p, community.traces);
    CHECK(report_json(first) == report_json(second));
    CHECK(audit_jsonl(first) == audit_jsonl(second));
    CHECK(report_csv(first) == report_csv(second));
}

TEST_CASE("trace problems are reported before the first step") {
    ScenarioConfig config;
    config.scenario_id = "broken";
    config.horizon_steps = 24;
    config.farms = {consumer("only", "load")};

    TraceSet traces;
    CHECK_THROWS_WITH_AS(run_simulation(config, traces), doctest::Contains("not found"),
                         DataError);

    traces.emplace("load", constant_trace("load", 5.0, 10));
    CHECK_THROWS_WITH_AS(run_simulation(config, traces), doctest::Contains("horizon needs 24"),
                         DataError);

    traces.clear();
    traces.emplace("load", constant_trace("load", 5.0, 24, default_trace_start() + 5));
    CHECK_THROWS_WITH_AS(run_simulation(config, traces), doctest::Contains("starts at"),
                         DataError);
}

TEST_CASE("invalid scenario configs never start running") {
    TraceSet traces;
    traces.emplace("load", constant_trace("load", 5.0, 1));

    ScenarioConfig config;
    config.scenario_id = "cfg";
    config.horizon_steps = 1;
    config.farms = {consumer("a", "load"), consumer("a", "load")};
    CHECK_THROWS_WITH_AS(run_simulation(config, traces), doctest::Contains("duplicate"),
                         ConfigError);

    config.farms = {consumer("a", "load")};
    config.farms[0].has_pv = true; // no pv trace ref
    CHECK_THROWS_AS(run_simulation(config, traces), ConfigError);

    config.farms[0].has_pv = false;
    config.farms[0].has_battery = true;
    config.farms[0].initial_soc_percent = 120.0;
    CHECK_THROWS_AS(run_simulation(config, traces), ConfigError);
}

TEST_CASE("comparing a scenario against itself yields zero deltas") {
    CommunityBlueprint blueprint;
    blueprint.horizon_steps = 48;
    const SyntheticCommunity community = build_synthetic_community(blueprint);

    ScenarioConfig clone = community.re_p2p;
    clone.scenario_id = "clone";
    const ComparisonResult result =
        run_comparison(community.re_p2p, {clone}, community.traces);

    for (const MetricDelta& delta : comparison_metrics(result)) {
        CHECK(delta.base_value == doctest::Approx(delta.variant_value).epsilon(1e-12));
        if (delta.delta_percent.has_value()) {
            CHECK(*delta.delta_percent == doctest::Approx(0.0).epsilon(1e-9));
        }
    }

    ScenarioConfig wrong_horizon = clone;
    wrong_horizon.horizon_steps = 24;
    CHECK_THROWS_AS(run_comparison(community.re_p2p, {wrong_horizon}, community.traces),
                    ConfigError);

    ScenarioConfig wrong_start = clone;
    wrong_start.start_epoch_hour += 1;
    CHECK_THROWS_AS(run_comparison(community.re_p2p, {wrong_start}, community.traces),
                    ConfigError);
}
