#include "farmtrade/battery.hpp"

#include <algorithm>
#include <string>

namespace farmtrade {

void BatterySpec::validate() const {
    if (!(capacity_kwh > 0.0)) {
        throw ConfigError("battery capacity must be positive");
    }
    if (!(max_charge_kwh > 0.0) || max_charge_kwh > capacity_kwh) {
        throw ConfigError("per-step charge limit must be in (0, capacity]");
    }
    if (!(max_discharge_kwh > 0.0) || max_discharge_kwh > capacity_kwh) {
        throw ConfigError("per-step discharge limit must be in (0, capacity]");
    }
}

double usable_capacity(const BatteryState& state, const BatterySpec& spec) {
    const double stored_kwh = state.soc_percent / 100.0 * spec.capacity_kwh;
    return std::min(stored_kwh, spec.max_discharge_kwh);
}

double charge_capacity(double surplus_kwh, bool has_renewables, const BatterySpec& spec) {
    if (!has_renewables) return spec.max_charge_kwh;
    if (surplus_kwh < spec.max_charge_kwh) return std::max(surplus_kwh, 0.0);
    return spec.max_charge_kwh;
}

double discharge_percent(double usable_kwh, const BatterySpec& spec) {
    if (usable_kwh < 0.0 || usable_kwh > spec.capacity_kwh) {
        throw InvariantError("discharge energy " + std::to_string(usable_kwh) +
                             " outside [0, capacity]");
    }
    return usable_kwh / spec.capacity_kwh * 100.0;
}

BatteryTransition apply_transition(const BatteryState& state, const BatterySpec& spec,
                                   double charged_kwh, double discharged_kwh) {
    if (charged_kwh < 0.0 || discharged_kwh < 0.0) {
        throw InvariantError("battery transition amounts must be nonnegative");
    }
    if (charged_kwh > 0.0 && discharged_kwh > 0.0) {
        throw InvariantError("battery cannot charge and discharge in the same step");
    }
    // Tiny slack absorbs float noise in quantities derived from trace sums.
    constexpr double slack = 1e-9;
    if (charged_kwh > spec.max_charge_kwh + slack) {
        throw InvariantError("charge " + std::to_string(charged_kwh) +
                             " kWh exceeds per-step limit " +
                             std::to_string(spec.max_charge_kwh));
    }
    if (discharged_kwh > usable_capacity(state, spec) + slack) {
        throw InvariantError("discharge " + std::to_string(discharged_kwh) +
                             " kWh exceeds usable capacity " +
                             std::to_string(usable_capacity(state, spec)));
    }

    const double raw = state.soc_percent + charged_kwh / spec.capacity_kwh * 100.0 -
                       discharge_percent(discharged_kwh, spec);
    const double clamped = std::clamp(raw, 0.0, 100.0);

    BatteryTransition transition;
    transition.state.soc_percent = clamped;
    transition.clamped_kwh = (raw - clamped) / 100.0 * spec.capacity_kwh;
    return transition;
}

} // namespace farmtrade
