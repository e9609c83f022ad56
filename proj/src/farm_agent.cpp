#include "farmtrade/farm_agent.hpp"

#include <algorithm>

namespace farmtrade {

double total_generation(const StepInputs& inputs, double usable_kwh, const FarmConfig& config) {
    if (!config.has_pv && !config.has_wind && !config.has_battery) return 0.0;
    double total = usable_kwh;
    if (config.has_pv) total += inputs.e_pv;
    if (config.has_wind) total += inputs.e_wind;
    return total;
}

QuantityResult sell_quantity(double e_tot, double e_load, double soc_percent, double b_ccap) {
    const double surplus = e_tot - e_load;
    if (surplus < 0.0) {
        throw InvariantError("sell quantity requested in a deficit state");
    }
    if (soc_percent >= 90.0) {
        return {surplus, rules::eq11_case_1, true};
    }
    if (surplus > b_ccap) {
        return {surplus - b_ccap, rules::eq11_case_2, true};
    }
    return {0.0, rules::eq11_no_residual, true};
}

QuantityResult buy_quantity(const StepInputs& inputs, double renewable_kwh, double usable_kwh,
                            double b_ccap, double soc_percent, const FarmConfig& config) {
    const bool re = config.has_renewables();
    const bool bat = config.has_battery;
    const double e_load = inputs.e_load;
    const TariffTier tier = inputs.tier;

    // Ordered case list, first match wins. The deficit cases treat the farm's
    // own supply as renewable generation plus (at most once) battery energy.
    if (!re && !bat) {
        return {e_load, rules::eq12_case_1, true};
    }
    if (renewable_kwh + usable_kwh < e_load && tier > TariffTier::Night && soc_percent > 20.0) {
        return {std::max(e_load - (renewable_kwh + usable_kwh), 0.0), rules::eq12_case_2, true};
    }
    if (tier == TariffTier::Night && soc_percent <= 50.0) {
        return {std::max((e_load - renewable_kwh) + b_ccap, 0.0), rules::eq12_case_3, true};
    }
    if (re && !bat) {
        return {std::max(e_load - renewable_kwh, 0.0), rules::eq12_case_4, true};
    }
    if (!re && bat && soc_percent > 20.0 && tier > TariffTier::Night) {
        return {std::max(e_load - usable_kwh, 0.0), rules::eq12_case_5, true};
    }
    if (!re && bat && soc_percent <= 20.0 && tier < TariffTier::Peak) {
        return {std::max(e_load + b_ccap, 0.0), rules::eq12_case_6, true};
    }
    return {0.0, rules::eq12_uncovered, false};
}

namespace {

void push_rule(FarmDecision& decision, std::string_view rule_id) {
    // Collapse consecutive duplicates (the quantity rule can repeat the
    // decision rule, e.g. the buy-full-load case).
    if (!decision.rule_trace.empty() && decision.rule_trace.back() == rule_id) return;
    decision.rule_trace.emplace_back(rule_id);
}

// Clears quantities and flags but keeps the trace: the record of which guards
// fired (and where coverage ran out) is the point of the trace.
void degrade_to_hold(FarmDecision& decision) {
    decision.charge = decision.discharge = decision.sell = decision.buy = false;
    decision.e_sell = decision.e_buy = 0.0;
    decision.charged_kwh = decision.discharged_kwh = 0.0;
    push_rule(decision, rules::hold_uncovered);
}

// Applies a buy-quantity result to a decision whose guard declared a buy
// intent. An uncovered quantity lookup voids the whole decision.
void settle_buy(FarmDecision& decision, const QuantityResult& quantity, double usable_kwh) {
    push_rule(decision, quantity.rule_id);
    if (!quantity.covered) {
        degrade_to_hold(decision);
        return;
    }
    decision.e_buy = quantity.value;
    decision.buy = decision.e_buy > 0.0;
    // The battery-deficit cases are the only ones whose quantity accounts for
    // energy the battery must actually deliver.
    if (quantity.rule_id == rules::eq12_case_2 || quantity.rule_id == rules::eq12_case_5) {
        decision.discharged_kwh = usable_kwh;
        decision.discharge = decision.discharged_kwh > 0.0;
        if (decision.discharge) {
            decision.charge = false;
            decision.charged_kwh = 0.0;
        }
    }
}

} // namespace

FarmDecision decide_step(const StepInputs& inputs, const std::optional<BatteryState>& battery,
                         const FarmConfig& config) {
    if (config.has_battery != battery.has_value()) {
        throw InvariantError("battery state must be present exactly for battery-owning farms");
    }
    if (inputs.e_pv < 0.0 || inputs.e_wind < 0.0 || inputs.e_load < 0.0) {
        throw InvariantError("step energies must be nonnegative");
    }

    const bool re = config.has_renewables();
    const bool bat = config.has_battery;
    const double soc = bat ? battery->soc_percent : 0.0;
    const double b_uc = bat ? usable_capacity(*battery, config.battery_spec) : 0.0;
    const double renewable = (config.has_pv ? inputs.e_pv : 0.0) +
                             (config.has_wind ? inputs.e_wind : 0.0);
    const double e_tot = total_generation(inputs, b_uc, config);
    const double e_load = inputs.e_load;

    FarmDecision decision;

    if (re && bat) {
        const double surplus = e_tot - e_load;
        if (e_tot > e_load) {
            const double b_ccap = charge_capacity(surplus, true, config.battery_spec);
            if (soc < 90.0) {
                decision.charge = true;
                decision.charged_kwh = b_ccap;
                push_rule(decision, surplus > config.battery_spec.max_charge_kwh
                                        ? rules::eq4_charge_and_sell
                                        : rules::eq4_charge_only);
                const QuantityResult q = sell_quantity(e_tot, e_load, soc, b_ccap);
                push_rule(decision, q.rule_id);
                decision.e_sell = q.value;
                decision.sell = decision.e_sell > 0.0;
            } else {
                push_rule(decision, rules::eq11_sell_full_surplus);
                const QuantityResult q = sell_quantity(e_tot, e_load, soc, b_ccap);
                push_rule(decision, q.rule_id);
                decision.e_sell = q.value;
                decision.sell = decision.e_sell > 0.0;
            }
        } else if (e_tot < e_load) {
            const double b_ccap = charge_capacity(surplus, true, config.battery_spec);
            if (soc > 20.0 && inputs.tier == TariffTier::Night) {
                push_rule(decision, rules::eq5_buy_no_charge);
                settle_buy(decision, buy_quantity(inputs, renewable, b_uc, b_ccap, soc, config),
                           b_uc);
            } else if ((soc < 50.0 && inputs.tier == TariffTier::Night) ||
                       (soc < 20.0 && inputs.tier < TariffTier::Peak)) {
                decision.charge = true;
                decision.charged_kwh = b_ccap;
                push_rule(decision, rules::eq5_buy_and_charge);
                settle_buy(decision, buy_quantity(inputs, renewable, b_uc, b_ccap, soc, config),
                           b_uc);
            } else {
                degrade_to_hold(decision);
            }
        } else {
            degrade_to_hold(decision);
        }
        return decision;
    }

    if (re && !bat) {
        if (e_tot > e_load) {
            push_rule(decision, rules::eq6_sell);
            const QuantityResult q = sell_quantity(e_tot, e_load, /*soc=*/0.0, /*b_ccap=*/0.0);
            push_rule(decision, q.rule_id);
            decision.e_sell = q.value;
            decision.sell = decision.e_sell > 0.0;
        } else if (e_tot < e_load) {
            push_rule(decision, rules::eq6_buy);
            settle_buy(decision, buy_quantity(inputs, renewable, 0.0, 0.0, 0.0, config), 0.0);
        } else {
            degrade_to_hold(decision);
        }
        return decision;
    }

    if (!re && bat) {
        const double b_ccap = charge_capacity(0.0, false, config.battery_spec);
        if (soc > 20.0 && inputs.tier == TariffTier::Night) {
            push_rule(decision, rules::eq7_buy_no_charge);
            settle_buy(decision, buy_quantity(inputs, 0.0, b_uc, b_ccap, soc, config), b_uc);
        } else if (soc < 20.0 && inputs.tier < TariffTier::Peak) {
            decision.charge = true;
            decision.charged_kwh = b_ccap;
            push_rule(decision, rules::eq7_buy_and_charge);
            settle_buy(decision, buy_quantity(inputs, 0.0, b_uc, b_ccap, soc, config), b_uc);
        } else {
            degrade_to_hold(decision);
        }
        return decision;
    }

    push_rule(decision, rules::eq12_case_1);
    settle_buy(decision, buy_quantity(inputs, 0.0, 0.0, 0.0, 0.0, config), 0.0);
    return decision;
}

} // namespace farmtrade
