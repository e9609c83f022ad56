#pragma once

#include "farmtrade/errors.hpp"

namespace farmtrade {

// Fixed battery parameters. Charge/discharge limits are per simulation step
// (one hour), in kWh. The model carries no round-trip losses.
struct BatterySpec {
    double capacity_kwh = 50.0;
    double max_charge_kwh = 10.0;    // per step
    double max_discharge_kwh = 10.0; // per step

    // Throws ConfigError unless 0 < limits <= capacity.
    void validate() const;
};

// Evolving battery state; soc_percent stays in [0, 100] at step boundaries.
struct BatteryState {
    double soc_percent = 50.0;
};

struct BatteryTransition {
    BatteryState state;
    // Energy the battery could not absorb because the state of charge
    // saturated; feeds the conservation ledger.
    double clamped_kwh = 0.0;
};

// Energy available for discharge this step: stored energy capped by the
// per-step discharge limit. Result in [0, max_discharge_kwh].
double usable_capacity(const BatteryState& state, const BatterySpec& spec);

// Charging capacity for this step. With renewables, the (nonnegative) surplus
// up to the charge limit; without renewables, the full charge limit (grid
// charging). Result in [0, max_charge_kwh].
double charge_capacity(double surplus_kwh, bool has_renewables, const BatterySpec& spec);

// Discharge expressed as percent of total capacity. Requires 0 <= usable_kwh
// <= capacity.
double discharge_percent(double usable_kwh, const BatterySpec& spec);

// Applies one step of charging or discharging (mutually exclusive) and clamps
// the state of charge to [0, 100], reporting the clamped energy. Throws
// InvariantError on simultaneous charge+discharge, charge beyond the per-step
// limit, or discharge beyond usable_capacity().
BatteryTransition apply_transition(const BatteryState& state, const BatterySpec& spec,
                                   double charged_kwh, double discharged_kwh);

} // namespace farmtrade
