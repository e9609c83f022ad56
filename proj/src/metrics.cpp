#include "farmtrade/metrics.hpp"

namespace farmtrade {

double purchase_cost_total(const ScenarioReport& report) {
    double total = 0.0;
    for (const auto& step_rows : report.ledger) {
        for (const LedgerRow& row : step_rows) total += row.cost;
    }
    return total;
}

double purchase_cost_daily_mean(const ScenarioReport& report) {
    if (report.steps.empty()) return 0.0;
    const double days = static_cast<double>(report.steps.size()) / 24.0;
    return purchase_cost_total(report) / days;
}

double sold_revenue_total(const ScenarioReport& report) {
    double total = 0.0;
    for (const auto& step_rows : report.ledger) {
        for (const LedgerRow& row : step_rows) total += row.revenue;
    }
    return total;
}

double peak_grid_import(const ScenarioReport& report, const TariffSchedule& schedule) {
    double total = 0.0;
    for (const StepRecord& step : report.steps) {
        if (tier_for_hour(step.hour_of_day, schedule) == TariffTier::Peak) {
            total += step.grid_import_kwh;
        }
    }
    return total;
}

double peak_grid_import(const ScenarioReport& report) {
    return peak_grid_import(report, report.tariff);
}

std::optional<double> percent_delta(double base, double variant) {
    if (base == 0.0) return std::nullopt;
    return (variant - base) / base * 100.0;
}

std::vector<MetricDelta> comparison_metrics(const ComparisonResult& result) {
    std::vector<MetricDelta> rows;
    const auto metric = [](const ScenarioReport& report, const std::string& name) {
        if (name == "purchase_cost_total") return purchase_cost_total(report);
        if (name == "purchase_cost_daily_mean") return purchase_cost_daily_mean(report);
        if (name == "sold_revenue") return sold_revenue_total(report);
        return peak_grid_import(report);
    };
    static const char* names[] = {"purchase_cost_total", "purchase_cost_daily_mean",
                                  "sold_revenue", "peak_grid_import"};
    for (const ScenarioReport& variant : result.variants) {
        for (const char* name : names) {
            MetricDelta row;
            row.variant_id = variant.scenario_id;
            row.metric = name;
            row.base_value = metric(result.base, name);
            row.variant_value = metric(variant, name);
            row.delta_percent = percent_delta(row.base_value, row.variant_value);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace farmtrade
