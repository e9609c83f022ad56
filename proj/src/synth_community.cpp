#include "farmtrade/synth_community.hpp"

#include <array>
#include <cstdio>
#include <string>

#include "farmtrade/errors.hpp"
#include "farmtrade/trace.hpp"

namespace farmtrade {
namespace {

struct Archetype {
    bool has_pv;
    bool has_wind;
    bool has_battery;
    double farm_scale;
    double pv_peak_kw;
    double wind_mean_kw;
};

// Mixed so that any prefix of the list is still a usable community. Battery
// owners get farm_scale >= 8 so their base night load stays above one step
// of discharge; the small wind croft keeps selling through evening peaks.
constexpr std::array<Archetype, 10> kArchetypes{{
    {true, false, true, 12.0, 50.0, 0.0},  // dairy with rooftop PV + battery
    {true, false, false, 6.0, 25.0, 0.0},  // mid-size PV-only dairy
    {false, true, true, 11.0, 0.0, 18.0},  // turbine + battery holding
    {false, false, false, 3.0, 0.0, 0.0},  // small consumer, no assets
    {true, false, true, 10.0, 40.0, 0.0},  // PV + battery dairy
    {false, true, false, 1.5, 0.0, 12.0},  // wind croft, low load
    {true, false, false, 4.0, 18.0, 0.0},  // small PV-only farm
    {false, false, true, 8.0, 0.0, 0.0},   // battery-only operation
    {true, false, true, 14.0, 60.0, 0.0},  // largest PV + battery dairy
    {false, false, false, 7.0, 0.0, 0.0},  // larger consumer, no assets
}};

std::string farm_name(int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "farm%02d", index + 1);
    return buf;
}

std::string trace_ref(const std::string& farm_id, const char* kind) {
    return "traces/" + farm_id + "_" + kind + ".csv";
}

void add_trace(TraceSet& traces, const std::string& ref, EnergyTrace trace) {
    trace.trace_id = ref;
    traces.emplace(ref, std::move(trace));
}

} // namespace

SyntheticCommunity build_synthetic_community(const CommunityBlueprint& blueprint) {
    if (blueprint.farm_count < 1) {
        throw ConfigError("community needs at least one farm");
    }
    if (blueprint.horizon_steps < 1) {
        throw ConfigError("community horizon must be at least one step");
    }

    SyntheticCommunity community;
    ScenarioConfig& scenario = community.re_p2p;
    scenario.scenario_id = "re_p2p";
    scenario.p2p_enabled = true;
    scenario.horizon_steps = blueprint.horizon_steps;
    scenario.seed = blueprint.seed;
    scenario.start_epoch_hour = blueprint.start_epoch_hour;

    for (int i = 0; i < blueprint.farm_count; ++i) {
        const Archetype& kind = kArchetypes[static_cast<std::size_t>(i) % kArchetypes.size()];
        FarmConfig farm;
        farm.farm_id = farm_name(i);
        farm.has_pv = kind.has_pv;
        farm.has_wind = kind.has_wind;
        farm.has_battery = kind.has_battery;

        TraceProfile profile;
        profile.farm_scale = kind.farm_scale;
        profile.pv_peak_kw = kind.pv_peak_kw;
        profile.wind_mean_kw = kind.wind_mean_kw;
        SynthesizedTraces generated = synthesize_traces(
            derive_seed(blueprint.seed, static_cast<std::uint64_t>(i)), profile,
            blueprint.horizon_steps, blueprint.start_epoch_hour);

        farm.load_trace_ref = trace_ref(farm.farm_id, "load");
        add_trace(community.traces, farm.load_trace_ref, std::move(generated.load));
        if (farm.has_pv) {
            farm.pv_trace_ref = trace_ref(farm.farm_id, "pv");
            add_trace(community.traces, farm.pv_trace_ref, std::move(generated.pv));
        }
        if (farm.has_wind) {
            farm.wind_trace_ref = trace_ref(farm.farm_id, "wind");
            add_trace(community.traces, farm.wind_trace_ref, std::move(generated.wind));
        }
        scenario.farms.push_back(std::move(farm));
    }
    scenario.validate();

    community.re_only = scenario;
    community.re_only.scenario_id = "re_only";
    community.re_only.p2p_enabled = false;

    community.no_re = scenario;
    community.no_re.scenario_id = "no_re";
    community.no_re.p2p_enabled = false;
    for (FarmConfig& farm : community.no_re.farms) {
        farm.has_pv = false;
        farm.has_wind = false;
        farm.pv_trace_ref.clear();
        farm.wind_trace_ref.clear();
    }

    return community;
}

} // namespace farmtrade
