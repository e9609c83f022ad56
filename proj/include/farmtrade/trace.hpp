#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "farmtrade/errors.hpp"

namespace farmtrade {

// Hours since the Unix epoch; the simulator's only notion of time. All
// timestamps are UTC with no DST handling.
std::int64_t epoch_hours_from_civil(int year, int month, int day, int hour);
std::string iso8601_from_epoch_hours(std::int64_t epoch_hours);
std::int64_t parse_iso8601_hour(const std::string& text); // throws DataError
int hour_of_day(std::int64_t epoch_hours);

// One hourly kWh series. All values finite and >= 0; one sample per hour
// starting at start_epoch_hour.
struct EnergyTrace {
    std::string trace_id;
    std::int64_t start_epoch_hour = 0;
    std::vector<double> values;

    void validate() const; // throws DataError
};

// Shape parameters for the synthetic trace generator.
struct TraceProfile {
    double farm_scale = 1.0;   // multiplies the load curve
    double pv_peak_kw = 20.0;  // clear-sky midday PV output
    double wind_mean_kw = 6.0; // long-run mean wind output
};

struct SynthesizedTraces {
    EnergyTrace load;
    EnergyTrace pv;
    EnergyTrace wind;
};

std::int64_t default_trace_start(); // 2021-01-01T00:00:00Z

// Deterministic in (seed, profile, horizon). The load carries two daily
// milking peaks (morning and late afternoon), PV is zero outside daylight
// with a midday bell, wind is a nonnegative autocorrelated series.
SynthesizedTraces synthesize_traces(std::uint64_t seed, const TraceProfile& profile,
                                    std::int64_t horizon_steps,
                                    std::int64_t start_epoch_hour = default_trace_start());

// Reads a trace CSV (header "timestamp_iso8601,kwh"; one row per hour) and
// validates it: finite nonnegative values, contiguous hourly timestamps,
// exactly expected_len rows. Errors cite the offending file line.
EnergyTrace load_trace_csv(const std::string& path, std::int64_t expected_len);

// Writes the same format back, atomically (temp file + rename).
void write_trace_csv(const EnergyTrace& trace, const std::string& path);

// Mixes a per-farm stream index into a master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream);

} // namespace farmtrade
