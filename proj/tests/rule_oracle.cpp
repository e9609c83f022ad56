#include "rule_oracle.hpp"

#include <algorithm>

namespace oracle {

using farmtrade::FarmConfig;
using farmtrade::StepInputs;
using farmtrade::TariffTier;

namespace {

// EQ9: renewables charge with the surplus when it fits under the step limit;
// everything else (big surplus, grid charging) uses the full step limit.
double charging_capacity(double surplus_kwh, bool re, const farmtrade::BatterySpec& spec) {
    if (re && surplus_kwh < spec.max_charge_kwh) {
        return std::max(surplus_kwh, 0.0);
    }
    return spec.max_charge_kwh;
}

// EQ2: stored energy capped by the per-step discharge limit.
double usable_energy(double soc_percent, const farmtrade::BatterySpec& spec) {
    const double stored = soc_percent / 100.0 * spec.capacity_kwh;
    if (stored < spec.max_discharge_kwh) {
        return stored;
    }
    return spec.max_discharge_kwh;
}

} // namespace

double sell_quantity(double e_tot, double e_load, double soc_percent, double b_ccap) {
    // EQ11, two cases in order: a full battery sells the whole surplus;
    // otherwise only what is left after charging moves to market.
    if (soc_percent >= 90.0) {
        return std::max(e_tot - e_load, 0.0);
    }
    if ((e_tot - e_load) > b_ccap) {
        return std::max((e_tot - e_load) - b_ccap, 0.0);
    }
    return 0.0;
}

std::optional<BuyResult> buy_quantity(double e_load, double renewable_kwh, double b_uc,
                                      double b_ccap, double soc_percent, bool re, bool bat,
                                      TariffTier tier) {
    // EQ12, six cases, first match wins. Cases 2 and 5 net out energy the
    // battery itself delivers, so they mark the battery as discharging.
    if (!re && !bat) {
        return BuyResult{std::max(e_load, 0.0), false};
    }
    if (renewable_kwh + b_uc < e_load && tier != TariffTier::Night && soc_percent > 20.0) {
        return BuyResult{std::max(e_load - (renewable_kwh + b_uc), 0.0), true};
    }
    if (tier == TariffTier::Night && soc_percent <= 50.0) {
        return BuyResult{std::max((e_load - renewable_kwh) + b_ccap, 0.0), false};
    }
    if (re && !bat) {
        return BuyResult{std::max(e_load - renewable_kwh, 0.0), false};
    }
    if (!re && bat && soc_percent > 20.0 && tier != TariffTier::Night) {
        return BuyResult{std::max(e_load - b_uc, 0.0), true};
    }
    if (!re && bat && soc_percent <= 20.0 && tier != TariffTier::Peak) {
        return BuyResult{std::max(e_load + b_ccap, 0.0), false};
    }
    return std::nullopt;
}

Decision decide(const StepInputs& inputs, std::optional<double> soc_percent,
                const FarmConfig& config) {
    Decision d;
    const bool re = config.has_pv || config.has_wind;
    const bool bat = config.has_battery;
    const double soc = bat ? *soc_percent : 0.0;
    const double renewable = (config.has_pv ? inputs.e_pv : 0.0) +
                             (config.has_wind ? inputs.e_wind : 0.0);
    const double b_uc = bat ? usable_energy(soc, config.battery_spec) : 0.0;
    // EQ3: battery-backed generation counts the usable battery energy.
    const double e_tot = (re || bat) ? renewable + b_uc : 0.0;
    const double e_load = inputs.e_load;

    const auto apply_buy = [&](const std::optional<BuyResult>& bought) {
        if (!bought) {
            d = Decision{};
            d.held = true;
            return;
        }
        d.e_buy = bought->value;
        d.buy = d.e_buy > 0.0;
        if (bought->battery_delivers) {
            d.discharged_kwh = b_uc;
            d.discharge = d.discharged_kwh > 0.0;
        }
    };

    if (re && bat) {
        if (e_tot > e_load) {
            const double surplus = e_tot - e_load;
            if (soc < 90.0) {
                // EQ4: charge with headroom; the surplus beyond one step of
                // charging is offered for sale.
                const double b_ccap = charging_capacity(surplus, true, config.battery_spec);
                d.charge = true;
                d.charged_kwh = b_ccap;
                d.e_sell = sell_quantity(e_tot, e_load, soc, b_ccap);
                d.sell = d.e_sell > 0.0;
            } else {
                // Full battery: EQ11 first case sells the entire surplus.
                d.e_sell = sell_quantity(e_tot, e_load, soc, 0.0);
                d.sell = d.e_sell > 0.0;
            }
            return d;
        }
        if (e_tot < e_load) {
            // EQ5, two guards in order.
            const double b_ccap = charging_capacity(e_tot - e_load, true, config.battery_spec);
            if (soc > 20.0 && inputs.tier == TariffTier::Night) {
                apply_buy(buy_quantity(e_load, renewable, b_uc, b_ccap, soc, re, bat, inputs.tier));
                return d;
            }
            if ((soc < 50.0 && inputs.tier == TariffTier::Night) ||
                (soc < 20.0 && inputs.tier != TariffTier::Peak)) {
                apply_buy(buy_quantity(e_load, renewable, b_uc, b_ccap, soc, re, bat, inputs.tier));
                if (!d.held) {
                    d.charge = true;
                    d.charged_kwh = b_ccap;
                }
                return d;
            }
            d.held = true;
            return d;
        }
        d.held = true;
        return d;
    }

    if (re && !bat) {
        // EQ6: pure comparison of generation and load.
        if (e_tot > e_load) {
            d.e_sell = sell_quantity(e_tot, e_load, 0.0, 0.0);
            d.sell = d.e_sell > 0.0;
            return d;
        }
        if (e_tot < e_load) {
            apply_buy(buy_quantity(e_load, renewable, 0.0, 0.0, 0.0, re, bat, inputs.tier));
            return d;
        }
        d.held = true;
        return d;
    }

    if (!re && bat) {
        // EQ7, two guards in order; grid charging uses the full step limit.
        const double b_ccap = charging_capacity(0.0, false, config.battery_spec);
        if (soc > 20.0 && inputs.tier == TariffTier::Night) {
            apply_buy(buy_quantity(e_load, 0.0, b_uc, b_ccap, soc, re, bat, inputs.tier));
            return d;
        }
        if (soc < 20.0 && inputs.tier != TariffTier::Peak) {
            apply_buy(buy_quantity(e_load, 0.0, b_uc, b_ccap, soc, re, bat, inputs.tier));
            if (!d.held) {
                d.charge = true;
                d.charged_kwh = b_ccap;
            }
            return d;
        }
        d.held = true;
        return d;
    }

    // EQ12 case 1: no assets, buy the whole load.
    apply_buy(buy_quantity(e_load, 0.0, 0.0, 0.0, 0.0, re, bat, inputs.tier));
    return d;
}

} // namespace oracle
