#pragma once

#include <cstdint>
#include <vector>

#include "farmtrade/sim_engine.hpp"

namespace farmtrade {

// Parameters for the built-in demonstration community.
struct CommunityBlueprint {
    std::uint64_t seed = 42;
    std::int64_t horizon_steps = 8760;
    std::int64_t start_epoch_hour = default_trace_start();
    int farm_count = 10;
};

// One community, three scenario views over the same traces:
//   re_p2p:  every farm with its assets, internal market enabled
//   re_only: same farms, internal market disabled
//   no_re:   PV and wind removed (batteries stay), market disabled
// Trace refs are relative file paths ("traces/farm01_load.csv") so the same
// configs work in memory and on disk.
struct SyntheticCommunity {
    ScenarioConfig re_p2p;
    ScenarioConfig re_only;
    ScenarioConfig no_re;
    TraceSet traces;
};

// Deterministic in the blueprint. Farms cycle through a fixed archetype mix
// of dairy operations: PV+battery holdings of several sizes, PV-only and
// wind-only farms, a battery-only farm, and plain consumers. Battery owners
// are sized so their night load exceeds one step of battery discharge.
SyntheticCommunity build_synthetic_community(const CommunityBlueprint& blueprint);

} // namespace farmtrade
