#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "farmtrade/config_json.hpp"
#include "farmtrade/errors.hpp"
#include "farmtrade/metrics.hpp"
#include "farmtrade/report_io.hpp"
#include "farmtrade/sim_engine.hpp"
#include "farmtrade/synth_community.hpp"

namespace py = pybind11;
using namespace farmtrade;

PYBIND11_MODULE(_farmtrade, m) {
    m.doc() = "Hourly peer-to-peer energy trading simulator for farm communities";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<DataError>(m, "DataError");
    py::register_exception<InvariantError>(m, "InvariantError");

    py::enum_<TariffTier>(m, "TariffTier")
        .value("Night", TariffTier::Night)
        .value("Day", TariffTier::Day)
        .value("Peak", TariffTier::Peak);

    py::class_<TariffSchedule>(m, "TariffSchedule")
        .def(py::init<>())
        .def_readwrite("night_price", &TariffSchedule::night_price)
        .def_readwrite("day_price", &TariffSchedule::day_price)
        .def_readwrite("peak_price", &TariffSchedule::peak_price)
        .def_readwrite("feed_in_price", &TariffSchedule::feed_in_price)
        .def_readonly("tier_of_hour", &TariffSchedule::tier_of_hour)
        .def_static("make", &TariffSchedule::make, py::arg("night_price"),
                    py::arg("day_price"), py::arg("peak_price"), py::arg("feed_in_price"),
                    py::arg("night_hours"), py::arg("peak_hours"),
                    py::arg("day_hours") = std::vector<int>{})
        .def_static("defaults", &TariffSchedule::defaults)
        .def("hours_in", &TariffSchedule::hours_in, py::arg("tier"));
    m.def("tier_for_hour", &tier_for_hour, py::arg("hour_of_day"), py::arg("schedule"));
    m.def("grid_price", &grid_price, py::arg("tier"), py::arg("schedule"));
    m.def("tier_name", &to_string, py::arg("tier"));

    py::class_<BatterySpec>(m, "BatterySpec")
        .def(py::init<>())
        .def_readwrite("capacity_kwh", &BatterySpec::capacity_kwh)
        .def_readwrite("max_charge_kwh", &BatterySpec::max_charge_kwh)
        .def_readwrite("max_discharge_kwh", &BatterySpec::max_discharge_kwh)
        .def("validate", &BatterySpec::validate);
    py::class_<BatteryState>(m, "BatteryState")
        .def(py::init<>())
        .def(py::init([](double soc) { return BatteryState{soc}; }), py::arg("soc_percent"))
        .def_readwrite("soc_percent", &BatteryState::soc_percent);
    py::class_<BatteryTransition>(m, "BatteryTransition")
        .def_readonly("state", &BatteryTransition::state)
        .def_readonly("clamped_kwh", &BatteryTransition::clamped_kwh);
    m.def("usable_capacity", &usable_capacity, py::arg("state"), py::arg("spec"));
    m.def("charge_capacity", &charge_capacity, py::arg("surplus_kwh"),
          py::arg("has_renewables"), py::arg("spec"));
    m.def("discharge_percent", &discharge_percent, py::arg("usable_kwh"), py::arg("spec"));
    m.def("apply_transition", &apply_transition, py::arg("state"), py::arg("spec"),
          py::arg("charged_kwh"), py::arg("discharged_kwh"));

    py::class_<FarmConfig>(m, "FarmConfig")
        .def(py::init<>())
        .def_readwrite("farm_id", &FarmConfig::farm_id)
        .def_readwrite("has_pv", &FarmConfig::has_pv)
        .def_readwrite("has_wind", &FarmConfig::has_wind)
        .def_readwrite("has_battery", &FarmConfig::has_battery)
        .def_readwrite("battery_spec", &FarmConfig::battery_spec)
        .def_readwrite("initial_soc_percent", &FarmConfig::initial_soc_percent)
        .def_readwrite("load_trace_ref", &FarmConfig::load_trace_ref)
        .def_readwrite("pv_trace_ref", &FarmConfig::pv_trace_ref)
        .def_readwrite("wind_trace_ref", &FarmConfig::wind_trace_ref)
        .def("has_renewables", &FarmConfig::has_renewables);
    py::class_<StepInputs>(m, "StepInputs")
        .def(py::init<>())
        .def_readwrite("e_pv", &StepInputs::e_pv)
        .def_readwrite("e_wind", &StepInputs::e_wind)
        .def_readwrite("e_load", &StepInputs::e_load)
        .def_readwrite("tier", &StepInputs::tier);
    py::class_<FarmDecision>(m, "FarmDecision")
        .def_readonly("charge", &FarmDecision::charge)
        .def_readonly("discharge", &FarmDecision::discharge)
        .def_readonly("sell", &FarmDecision::sell)
        .def_readonly("buy", &FarmDecision::buy)
        .def_readonly("e_sell", &FarmDecision::e_sell)
        .def_readonly("e_buy", &FarmDecision::e_buy)
        .def_readonly("charged_kwh", &FarmDecision::charged_kwh)
        .def_readonly("discharged_kwh", &FarmDecision::discharged_kwh)
        .def_readonly("rule_trace", &FarmDecision::rule_trace);
    py::class_<QuantityResult>(m, "QuantityResult")
        .def_readonly("value", &QuantityResult::value)
        .def_property_readonly("rule_id",
                               [](const QuantityResult& r) { return std::string(r.rule_id); })
        .def_readonly("covered", &QuantityResult::covered);
    m.def("total_generation", &total_generation, py::arg("inputs"), py::arg("usable_kwh"),
          py::arg("config"));
    m.def("sell_quantity", &sell_quantity, py::arg("e_tot"), py::arg("e_load"),
          py::arg("soc_percent"), py::arg("b_ccap"));
    m.def("buy_quantity", &buy_quantity, py::arg("inputs"), py::arg("renewable_kwh"),
          py::arg("usable_kwh"), py::arg("b_ccap"), py::arg("soc_percent"), py::arg("config"));
    m.def("decide_step", &decide_step, py::arg("inputs"), py::arg("battery"), py::arg("config"));

    py::class_<Order>(m, "Order")
        .def(py::init<>())
        .def(py::init([](std::string farm_id, double qty) {
                 return Order{std::move(farm_id), qty};
             }),
             py::arg("farm_id"), py::arg("quantity_kwh"))
        .def_readwrite("farm_id", &Order::farm_id)
        .def_readwrite("quantity_kwh", &Order::quantity_kwh);
    py::class_<OrderBook>(m, "OrderBook")
        .def(py::init<>())
        .def_readwrite("offers", &OrderBook::offers)
        .def_readwrite("bids", &OrderBook::bids)
        .def_readwrite("tier", &OrderBook::tier)
        .def_readwrite("step_index", &OrderBook::step_index);
    py::class_<PriceQuote>(m, "PriceQuote")
        .def_readonly("sdr", &PriceQuote::sdr)
        .def_readonly("isp", &PriceQuote::isp)
        .def_readonly("ibp", &PriceQuote::ibp);
    py::class_<FarmSettlement>(m, "FarmSettlement")
        .def_readonly("farm_id", &FarmSettlement::farm_id)
        .def_readonly("bought_internal_kwh", &FarmSettlement::bought_internal_kwh)
        .def_readonly("bought_grid_kwh", &FarmSettlement::bought_grid_kwh)
        .def_readonly("sold_internal_kwh", &FarmSettlement::sold_internal_kwh)
        .def_readonly("sold_grid_kwh", &FarmSettlement::sold_grid_kwh)
        .def_readonly("cost", &FarmSettlement::cost)
        .def_readonly("revenue", &FarmSettlement::revenue)
        .def_readonly("cash_delta", &FarmSettlement::cash_delta);
    py::class_<MarketResult>(m, "MarketResult")
        .def_readonly("quote", &MarketResult::quote)
        .def_readonly("settlements", &MarketResult::settlements)
        .def_readonly("tsp", &MarketResult::tsp)
        .def_readonly("tbp", &MarketResult::tbp)
        .def_readonly("grid_import_kwh", &MarketResult::grid_import_kwh)
        .def_readonly("grid_export_kwh", &MarketResult::grid_export_kwh)
        .def_readonly("auctioneer_imbalance", &MarketResult::auctioneer_imbalance);
    m.def("supply_demand_ratio", &supply_demand_ratio, py::arg("tsp"), py::arg("tbp"));
    m.def("internal_selling_price", &internal_selling_price, py::arg("sdr"),
          py::arg("lambda_sell"), py::arg("lambda_buy"));
    m.def("internal_buying_price", &internal_buying_price, py::arg("isp"), py::arg("sdr"),
          py::arg("lambda_buy"));
    m.def("clear_market", &clear_market, py::arg("book"), py::arg("schedule"),
          py::arg("p2p_enabled"));

    py::class_<EnergyTrace>(m, "EnergyTrace")
        .def(py::init<>())
        .def_readwrite("trace_id", &EnergyTrace::trace_id)
        .def_readwrite("start_epoch_hour", &EnergyTrace::start_epoch_hour)
        .def_readwrite("values", &EnergyTrace::values)
        .def("validate", &EnergyTrace::validate);
    py::class_<TraceProfile>(m, "TraceProfile")
        .def(py::init<>())
        .def_readwrite("farm_scale", &TraceProfile::farm_scale)
        .def_readwrite("pv_peak_kw", &TraceProfile::pv_peak_kw)
        .def_readwrite("wind_mean_kw", &TraceProfile::wind_mean_kw);
    py::class_<SynthesizedTraces>(m, "SynthesizedTraces")
        .def_readonly("load", &SynthesizedTraces::load)
        .def_readonly("pv", &SynthesizedTraces::pv)
        .def_readonly("wind", &SynthesizedTraces::wind);
    m.def("default_trace_start", &default_trace_start);
    m.def("synthesize_traces", &synthesize_traces, py::arg("seed"), py::arg("profile"),
          py::arg("horizon_steps"), py::arg("start_epoch_hour") = default_trace_start());
    m.def("load_trace_csv", &load_trace_csv, py::arg("path"), py::arg("expected_len"));
    m.def("write_trace_csv", &write_trace_csv, py::arg("trace"), py::arg("path"));
    m.def("derive_seed", &derive_seed, py::arg("master_seed"), py::arg("stream"));
    m.def("parse_iso8601_hour", &parse_iso8601_hour, py::arg("text"));
    m.def("iso8601_from_epoch_hours", &iso8601_from_epoch_hours, py::arg("epoch_hours"));
    m.def("hour_of_day", &hour_of_day, py::arg("epoch_hours"));

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("scenario_id", &ScenarioConfig::scenario_id)
        .def_readwrite("farms", &ScenarioConfig::farms)
        .def_readwrite("tariff", &ScenarioConfig::tariff)
        .def_readwrite("p2p_enabled", &ScenarioConfig::p2p_enabled)
        .def_readwrite("horizon_steps", &ScenarioConfig::horizon_steps)
        .def_readwrite("seed", &ScenarioConfig::seed)
        .def_readwrite("start_epoch_hour", &ScenarioConfig::start_epoch_hour)
        .def("validate", &ScenarioConfig::validate);
    py::class_<StepRecord>(m, "StepRecord")
        .def_readonly("step", &StepRecord::step)
        .def_readonly("hour_of_day", &StepRecord::hour_of_day)
        .def_readonly("epoch_hour", &StepRecord::epoch_hour)
        .def_readonly("tier", &StepRecord::tier)
        .def_readonly("tsp", &StepRecord::tsp)
        .def_readonly("tbp", &StepRecord::tbp)
        .def_readonly("sdr", &StepRecord::sdr)
        .def_readonly("isp", &StepRecord::isp)
        .def_readonly("ibp", &StepRecord::ibp)
        .def_readonly("grid_import_kwh", &StepRecord::grid_import_kwh)
        .def_readonly("grid_export_kwh", &StepRecord::grid_export_kwh)
        .def_readonly("community_cost", &StepRecord::community_cost)
        .def_readonly("community_revenue", &StepRecord::community_revenue);
    py::class_<LedgerRow>(m, "LedgerRow")
        .def_readonly("farm_id", &LedgerRow::farm_id)
        .def_readonly("generation_kwh", &LedgerRow::generation_kwh)
        .def_readonly("load_kwh", &LedgerRow::load_kwh)
        .def_readonly("charged_kwh", &LedgerRow::charged_kwh)
        .def_readonly("discharged_kwh", &LedgerRow::discharged_kwh)
        .def_readonly("bought_internal_kwh", &LedgerRow::bought_internal_kwh)
        .def_readonly("bought_grid_kwh", &LedgerRow::bought_grid_kwh)
        .def_readonly("sold_internal_kwh", &LedgerRow::sold_internal_kwh)
        .def_readonly("sold_grid_kwh", &LedgerRow::sold_grid_kwh)
        .def_readonly("clamp_residual_kwh", &LedgerRow::clamp_residual_kwh)
        .def_readonly("reconciled_kwh", &LedgerRow::reconciled_kwh)
        .def_readonly("soc_percent_after", &LedgerRow::soc_percent_after)
        .def_readonly("cost", &LedgerRow::cost)
        .def_readonly("revenue", &LedgerRow::revenue);
    py::class_<StepEvent>(m, "StepEvent")
        .def_readonly("step", &StepEvent::step)
        .def_readonly("farm_id", &StepEvent::farm_id)
        .def_readonly("kind", &StepEvent::kind)
        .def_readonly("amount_kwh", &StepEvent::amount_kwh)
        .def_readonly("detail", &StepEvent::detail);
    py::class_<FarmTotals>(m, "FarmTotals")
        .def_readonly("farm_id", &FarmTotals::farm_id)
        .def_readonly("bought_kwh", &FarmTotals::bought_kwh)
        .def_readonly("sold_kwh", &FarmTotals::sold_kwh)
        .def_readonly("cost", &FarmTotals::cost)
        .def_readonly("revenue", &FarmTotals::revenue)
        .def_readonly("cash_delta", &FarmTotals::cash_delta);
    py::class_<ScenarioTotals>(m, "ScenarioTotals")
        .def_readonly("purchase_cost", &ScenarioTotals::purchase_cost)
        .def_readonly("sold_revenue", &ScenarioTotals::sold_revenue)
        .def_readonly("grid_import_kwh", &ScenarioTotals::grid_import_kwh)
        .def_readonly("grid_export_kwh", &ScenarioTotals::grid_export_kwh)
        .def_readonly("auctioneer_imbalance", &ScenarioTotals::auctioneer_imbalance);
    py::class_<ScenarioReport>(m, "ScenarioReport")
        .def_readonly("scenario_id", &ScenarioReport::scenario_id)
        .def_readonly("p2p_enabled", &ScenarioReport::p2p_enabled)
        .def_readonly("seed", &ScenarioReport::seed)
        .def_readonly("steps", &ScenarioReport::steps)
        .def_readonly("ledger", &ScenarioReport::ledger)
        .def_readonly("events", &ScenarioReport::events)
        .def_readonly("farm_totals", &ScenarioReport::farm_totals)
        .def_readonly("totals", &ScenarioReport::totals)
        .def_readonly("tariff", &ScenarioReport::tariff);
    m.def("run_simulation", &run_simulation, py::arg("config"), py::arg("traces"));
    py::class_<ComparisonResult>(m, "ComparisonResult")
        .def_readonly("base", &ComparisonResult::base)
        .def_readonly("variants", &ComparisonResult::variants);
    m.def("run_comparison", &run_comparison, py::arg("base"), py::arg("variants"),
          py::arg("traces"));

    m.def("purchase_cost_total", &purchase_cost_total, py::arg("report"));
    m.def("purchase_cost_daily_mean", &purchase_cost_daily_mean, py::arg("report"));
    m.def("sold_revenue_total", &sold_revenue_total, py::arg("report"));
    m.def("peak_grid_import",
          py::overload_cast<const ScenarioReport&>(&peak_grid_import), py::arg("report"));
    py::class_<MetricDelta>(m, "MetricDelta")
        .def_readonly("variant_id", &MetricDelta::variant_id)
        .def_readonly("metric", &MetricDelta::metric)
        .def_readonly("base_value", &MetricDelta::base_value)
        .def_readonly("variant_value", &MetricDelta::variant_value)
        .def_readonly("delta_percent", &MetricDelta::delta_percent);
    m.def("comparison_metrics", &comparison_metrics, py::arg("result"));

    m.def("report_csv", &report_csv, py::arg("report"));
    m.def("report_json", &report_json, py::arg("report"));
    m.def("audit_jsonl", &audit_jsonl, py::arg("report"));
    m.def("comparison_csv", &comparison_csv, py::arg("deltas"));
    m.def("comparison_json", &comparison_json, py::arg("result"), py::arg("deltas"));

    py::class_<LoadedScenario>(m, "LoadedScenario")
        .def_readonly("config", &LoadedScenario::config)
        .def_readonly("traces", &LoadedScenario::traces);
    py::class_<LoadedComparison>(m, "LoadedComparison")
        .def_readonly("base", &LoadedComparison::base)
        .def_readonly("variants", &LoadedComparison::variants)
        .def_readonly("traces", &LoadedComparison::traces);
    m.def("load_scenario_file", &load_scenario_file, py::arg("path"));
    m.def("parse_scenario_json", &parse_scenario_json, py::arg("text"), py::arg("source_name"));
    m.def("load_comparison_file", &load_comparison_file, py::arg("path"));
    m.def("scenario_to_json", &scenario_to_json, py::arg("config"));
    m.def("comparison_to_json", &comparison_to_json, py::arg("base"), py::arg("variants"));

    py::class_<CommunityBlueprint>(m, "CommunityBlueprint")
        .def(py::init<>())
        .def_readwrite("seed", &CommunityBlueprint::seed)
        .def_readwrite("horizon_steps", &CommunityBlueprint::horizon_steps)
        .def_readwrite("start_epoch_hour", &CommunityBlueprint::start_epoch_hour)
        .def_readwrite("farm_count", &CommunityBlueprint::farm_count);
    py::class_<SyntheticCommunity>(m, "SyntheticCommunity")
        .def_readonly("re_p2p", &SyntheticCommunity::re_p2p)
        .def_readonly("re_only", &SyntheticCommunity::re_only)
        .def_readonly("no_re", &SyntheticCommunity::no_re)
        .def_readonly("traces", &SyntheticCommunity::traces);
    m.def("build_synthetic_community", &build_synthetic_community, py::arg("blueprint"));
}
