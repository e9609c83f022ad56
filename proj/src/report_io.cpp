#include "farmtrade/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace farmtrade {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed6(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return buffer;
}

ordered_json tariff_json(const TariffSchedule& tariff) {
    ordered_json j;
    j["night_price"] = tariff.night_price;
    j["day_price"] = tariff.day_price;
    j["peak_price"] = tariff.peak_price;
    j["feed_in_price"] = tariff.feed_in_price;
    j["night_hours"] = tariff.hours_in(TariffTier::Night);
    j["day_hours"] = tariff.hours_in(TariffTier::Day);
    j["peak_hours"] = tariff.hours_in(TariffTier::Peak);
    return j;
}

ordered_json step_json(const StepRecord& step) {
    ordered_json j;
    j["step"] = step.step;
    j["timestamp"] = iso8601_from_epoch_hours(step.epoch_hour);
    j["tier"] = to_string(step.tier);
    j["tsp"] = step.tsp;
    j["tbp"] = step.tbp;
    if (step.sdr.has_value()) {
        j["sdr"] = *step.sdr;
    } else {
        j["sdr"] = nullptr;
    }
    j["isp"] = step.isp;
    j["ibp"] = step.ibp;
    j["grid_import_kwh"] = step.grid_import_kwh;
    j["grid_export_kwh"] = step.grid_export_kwh;
    j["community_cost"] = step.community_cost;
    j["community_revenue"] = step.community_revenue;
    return j;
}

ordered_json event_json(const StepEvent& event) {
    ordered_json j;
    j["step"] = event.step;
    j["farm_id"] = event.farm_id;
    j["kind"] = event.kind;
    j["amount_kwh"] = event.amount_kwh;
    j["detail"] = event.detail;
    return j;
}

ordered_json totals_json(const ScenarioTotals& totals) {
    ordered_json j;
    j["purchase_cost"] = totals.purchase_cost;
    j["sold_revenue"] = totals.sold_revenue;
    j["grid_import_kwh"] = totals.grid_import_kwh;
    j["grid_export_kwh"] = totals.grid_export_kwh;
    j["auctioneer_imbalance"] = totals.auctioneer_imbalance;
    return j;
}

} // namespace

std::string report_csv(const ScenarioReport& report) {
    std::string out =
        "step,timestamp,tier,tsp,tbp,sdr,isp,ibp,grid_import,grid_export,"
        "community_cost,community_revenue\n";
    for (const StepRecord& step : report.steps) {
        out += std::to_string(step.step);
        out += ',';
        out += iso8601_from_epoch_hours(step.epoch_hour);
        out += ',';
        out += to_string(step.tier);
        out += ',';
        out += fixed6(step.tsp);
        out += ',';
        out += fixed6(step.tbp);
        out += ',';
        if (step.sdr.has_value()) out += fixed6(*step.sdr);
        out += ',';
        out += fixed6(step.isp);
        out += ',';
        out += fixed6(step.ibp);
        out += ',';
        out += fixed6(step.grid_import_kwh);
        out += ',';
        out += fixed6(step.grid_export_kwh);
        out += ',';
        out += fixed6(step.community_cost);
        out += ',';
        out += fixed6(step.community_revenue);
        out += '\n';
    }
    return out;
}

std::string report_json(const ScenarioReport& report) {
    ordered_json j;
    j["scenario_id"] = report.scenario_id;
    j["p2p_enabled"] = report.p2p_enabled;
    j["seed"] = report.seed;
    j["horizon_steps"] = report.steps.size();
    if (!report.steps.empty()) {
        j["start_time"] = iso8601_from_epoch_hours(report.steps.front().epoch_hour);
    }
    j["tariff"] = tariff_json(report.tariff);
    j["totals"] = totals_json(report.totals);

    ordered_json farm_totals = ordered_json::array();
    for (const FarmTotals& totals : report.farm_totals) {
        ordered_json f;
        f["farm_id"] = totals.farm_id;
        f["bought_kwh"] = totals.bought_kwh;
        f["sold_kwh"] = totals.sold_kwh;
        f["cost"] = totals.cost;
        f["revenue"] = totals.revenue;
        f["cash_delta"] = totals.cash_delta;
        farm_totals.push_back(std::move(f));
    }
    j["farm_totals"] = std::move(farm_totals);

    ordered_json steps = ordered_json::array();
    for (const StepRecord& step : report.steps) steps.push_back(step_json(step));
    j["steps"] = std::move(steps);

    ordered_json ledger = ordered_json::array();
    for (const auto& step_rows : report.ledger) {
        ordered_json rows = ordered_json::array();
        for (const LedgerRow& row : step_rows) {
            ordered_json r;
            r["farm_id"] = row.farm_id;
            r["generation_kwh"] = row.generation_kwh;
            r["load_kwh"] = row.load_kwh;
            r["charged_kwh"] = row.charged_kwh;
            r["discharged_kwh"] = row.discharged_kwh;
            r["bought_internal_kwh"] = row.bought_internal_kwh;
            r["bought_grid_kwh"] = row.bought_grid_kwh;
            r["sold_internal_kwh"] = row.sold_internal_kwh;
            r["sold_grid_kwh"] = row.sold_grid_kwh;
            r["clamp_residual_kwh"] = row.clamp_residual_kwh;
            r["reconciled_kwh"] = row.reconciled_kwh;
            r["soc_percent_after"] = row.soc_percent_after;
            r["cost"] = row.cost;
            r["revenue"] = row.revenue;
            rows.push_back(std::move(r));
        }
        ledger.push_back(std::move(rows));
    }
    j["ledger"] = std::move(ledger);

    ordered_json events = ordered_json::array();
    for (const StepEvent& event : report.events) events.push_back(event_json(event));
    j["events"] = std::move(events);

    return j.dump(2) + "\n";
}

std::string audit_jsonl(const ScenarioReport& report) {
    std::string out;
    std::size_t next_event = 0;
    for (const StepRecord& step : report.steps) {
        ordered_json line = step_json(step);
        ordered_json events = ordered_json::array();
        while (next_event < report.events.size() &&
               report.events[next_event].step == step.step) {
            events.push_back(event_json(report.events[next_event]));
            ++next_event;
        }
        line["events"] = std::move(events);
        out += line.dump();
        out += '\n';
    }
    return out;
}

std::string comparison_csv(const std::vector<MetricDelta>& deltas) {
    std::string out = "variant_id,metric,base_value,variant_value,delta_percent\n";
    for (const MetricDelta& delta : deltas) {
        out += delta.variant_id;
        out += ',';
        out += delta.metric;
        out += ',';
        out += fixed6(delta.base_value);
        out += ',';
        out += fixed6(delta.variant_value);
        out += ',';
        if (delta.delta_percent.has_value()) out += fixed6(*delta.delta_percent);
        out += '\n';
    }
    return out;
}

std::string comparison_json(const ComparisonResult& result,
                            const std::vector<MetricDelta>& deltas) {
    ordered_json j;
    j["base_scenario_id"] = result.base.scenario_id;
    j["base_totals"] = totals_json(result.base.totals);
    ordered_json variants = ordered_json::array();
    for (const ScenarioReport& variant : result.variants) {
        ordered_json v;
        v["scenario_id"] = variant.scenario_id;
        v["totals"] = totals_json(variant.totals);
        variants.push_back(std::move(v));
    }
    j["variants"] = std::move(variants);

    ordered_json rows = ordered_json::array();
    for (const MetricDelta& delta : deltas) {
        ordered_json r;
        r["variant_id"] = delta.variant_id;
        r["metric"] = delta.metric;
        r["base_value"] = delta.base_value;
        r["variant_value"] = delta.variant_value;
        if (delta.delta_percent.has_value()) {
            r["delta_percent"] = *delta.delta_percent;
        } else {
            r["delta_percent"] = nullptr;
        }
        rows.push_back(std::move(r));
    }
    j["metrics"] = std::move(rows);
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path temp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw DataError("cannot write to " + temp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw DataError("short write to " + temp.string());
        }
    }
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec) {
        throw DataError("cannot move " + temp.string() + " to " + target.string() + ": " +
                        ec.message());
    }
}

} // namespace farmtrade
