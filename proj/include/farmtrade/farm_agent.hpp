#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "farmtrade/battery.hpp"
#include "farmtrade/tariff.hpp"

namespace farmtrade {

// Static description of one farm: which assets it owns and which traces feed
// it. Trace refs are resolved by the simulation engine; refs for absent
// assets may be empty.
struct FarmConfig {
    std::string farm_id;
    bool has_pv = false;
    bool has_wind = false;
    bool has_battery = false;
    BatterySpec battery_spec{};
    double initial_soc_percent = 50.0;
    std::string load_trace_ref;
    std::string pv_trace_ref;
    std::string wind_trace_ref;

    bool has_renewables() const { return has_pv || has_wind; }
};

// One hour of inputs for one farm. Energies are kWh for the hour.
struct StepInputs {
    double e_pv = 0.0;
    double e_wind = 0.0;
    double e_load = 0.0;
    TariffTier tier = TariffTier::Day;
};

// Outcome of one farm's hourly decision. Flags are coherent with quantities:
// sell == (e_sell > 0), buy == (e_buy > 0), and sell/buy as well as
// charge/discharge are mutually exclusive. rule_trace lists the identifiers
// of the rules that fired, in order.
struct FarmDecision {
    bool charge = false;
    bool discharge = false;
    bool sell = false;
    bool buy = false;
    double e_sell = 0.0;
    double e_buy = 0.0;
    double charged_kwh = 0.0;
    double discharged_kwh = 0.0;
    std::vector<std::string> rule_trace;
};

// Stable rule identifiers emitted in rule traces and the per-step audit log.
namespace rules {
inline constexpr std::string_view eq4_charge_only = "EQ4.CHARGE_ONLY";
inline constexpr std::string_view eq4_charge_and_sell = "EQ4.CHARGE_AND_SELL";
inline constexpr std::string_view eq5_buy_no_charge = "EQ5.BUY_NO_CHARGE";
inline constexpr std::string_view eq5_buy_and_charge = "EQ5.BUY_AND_CHARGE";
inline constexpr std::string_view eq6_sell = "EQ6.SELL";
inline constexpr std::string_view eq6_buy = "EQ6.BUY";
inline constexpr std::string_view eq7_buy_no_charge = "EQ7.BUY_NO_CHARGE";
inline constexpr std::string_view eq7_buy_and_charge = "EQ7.BUY_AND_CHARGE";
inline constexpr std::string_view eq11_sell_full_surplus = "EQ11.SELL_FULL_SURPLUS";
inline constexpr std::string_view eq11_case_1 = "EQ11.CASE_1";
inline constexpr std::string_view eq11_case_2 = "EQ11.CASE_2";
inline constexpr std::string_view eq11_no_residual = "EQ11.NO_RESIDUAL";
inline constexpr std::string_view eq12_case_1 = "EQ12.CASE_1";
inline constexpr std::string_view eq12_case_2 = "EQ12.CASE_2";
inline constexpr std::string_view eq12_case_3 = "EQ12.CASE_3";
inline constexpr std::string_view eq12_case_4 = "EQ12.CASE_4";
inline constexpr std::string_view eq12_case_5 = "EQ12.CASE_5";
inline constexpr std::string_view eq12_case_6 = "EQ12.CASE_6";
inline constexpr std::string_view eq12_uncovered = "EQ12.UNCOVERED";
inline constexpr std::string_view hold_uncovered = "HOLD.UNCOVERED";
} // namespace rules

// Result of a quantity rule: the amount, the case that produced it, and
// whether any case matched at all. An uncovered lookup yields 0 and degrades
// the caller's decision to a hold.
struct QuantityResult {
    double value = 0.0;
    std::string_view rule_id;
    bool covered = true;
};

// Total energy available to the farm this hour: flag-gated renewable
// generation plus usable battery energy; 0 for farms with no assets.
double total_generation(const StepInputs& inputs, double usable_kwh, const FarmConfig& config);

// Excess energy offered for sale in a surplus state (requires e_tot >=
// e_load): the full surplus when the battery is nearly full (SoC >= 90),
// otherwise whatever remains after the charge capacity is served.
QuantityResult sell_quantity(double e_tot, double e_load, double soc_percent, double b_ccap);

// Energy to purchase, evaluated as an ordered case list (first match wins).
// Battery energy counts once: the deficit cases subtract renewable generation
// and usable battery energy separately. Result clamped to >= 0.
QuantityResult buy_quantity(const StepInputs& inputs, double renewable_kwh, double usable_kwh,
                            double b_ccap, double soc_percent, const FarmConfig& config);

// The per-farm hourly decision engine. battery must be present iff
// config.has_battery. Every input falls into one of four regimes
// (renewables/battery on/off); unmatched guards inside a regime produce a
// hold decision (all flags clear) that the simulation ledger reconciles.
FarmDecision decide_step(const StepInputs& inputs, const std::optional<BatteryState>& battery,
                         const FarmConfig& config);

} // namespace farmtrade
