#include "farmtrade/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "farmtrade/report_io.hpp"

namespace farmtrade {

namespace {

// Civil-from-days / days-from-civil in the proleptic Gregorian calendar
// (Howard Hinnant's algorithms), hour-resolution only.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const int yoe = static_cast<int>(y - era * 400);
    const int doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const int doe = static_cast<int>(z - era * 146097);
    const int yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const int mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yoe + era * 400) + (m <= 2);
}

int days_in_month(int y, int m) {
    static const int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2) {
        const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        return leap ? 29 : 28;
    }
    return lengths[m - 1];
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    return a >= 0 ? a / b : -((-a + b - 1) / b);
}

} // namespace

std::int64_t epoch_hours_from_civil(int year, int month, int day, int hour) {
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month) || hour < 0 ||
        hour > 23) {
        throw DataError("invalid civil time " + std::to_string(year) + "-" +
                        std::to_string(month) + "-" + std::to_string(day) + " " +
                        std::to_string(hour) + ":00");
    }
    return days_from_civil(year, month, day) * 24 + hour;
}

std::string iso8601_from_epoch_hours(std::int64_t epoch_hours) {
    const std::int64_t days = floor_div(epoch_hours, 24);
    const int hour = static_cast<int>(epoch_hours - days * 24);
    int y = 0, m = 0, d = 0;
    civil_from_days(days, y, m, d);
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02dT%02d:00:00Z", y, m, d, hour);
    return buffer;
}

std::int64_t parse_iso8601_hour(const std::string& text) {
    // Strict whole-hour UTC form: YYYY-MM-DDThh:00:00Z.
    int y = 0, m = 0, d = 0, hh = 0, mm = 0, ss = 0;
    char t = 0, z = 0;
    const int matched =
        std::sscanf(text.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%c", &y, &m, &d, &t, &hh, &mm, &ss, &z);
    if (matched != 8 || t != 'T' || z != 'Z' || text.size() != 20) {
        throw DataError("timestamp '" + text + "' is not of the form YYYY-MM-DDThh:00:00Z");
    }
    if (mm != 0 || ss != 0) {
        throw DataError("timestamp '" + text + "' is not on a whole hour");
    }
    return epoch_hours_from_civil(y, m, d, hh);
}

int hour_of_day(std::int64_t epoch_hours) {
    return static_cast<int>(epoch_hours - floor_div(epoch_hours, 24) * 24);
}

std::int64_t default_trace_start() { return epoch_hours_from_civil(2021, 1, 1, 0); }

void EnergyTrace::validate() const {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0) {
            throw DataError("trace " + trace_id + " row " + std::to_string(i + 1) +
                            " is negative or not finite");
        }
    }
}

EnergyTrace load_trace_csv(const std::string& path, std::int64_t expected_len) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open trace file: " + path);
    }

    auto strip_cr = [](std::string& line) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
    };

    std::string line;
    if (!std::getline(in, line)) {
        throw DataError(path + ": empty file, expected a header row");
    }
    strip_cr(line);
    if (line != "timestamp_iso8601,kwh") {
        throw DataError(path + ": unexpected header '" + line +
                        "', expected 'timestamp_iso8601,kwh'");
    }

    EnergyTrace trace;
    {
        // Trace id from the file name, extension dropped.
        const auto slash = path.find_last_of("/\\");
        std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
        const auto dot = name.find_last_of('.');
        trace.trace_id = dot == std::string::npos ? name : name.substr(0, dot);
    }

    std::int64_t row = 0;
    while (std::getline(in, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        ++row;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw DataError(path + " row " + std::to_string(row) + ": expected 2 columns");
        }
        const std::int64_t stamp = [&] {
            try {
                return parse_iso8601_hour(line.substr(0, comma));
            } catch (const DataError& e) {
                throw DataError(path + " row " + std::to_string(row) + ": " + e.what());
            }
        }();

        double value = 0.0;
        const char* first = line.data() + comma + 1;
        const char* last = line.data() + line.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) {
            throw DataError(path + " row " + std::to_string(row) + ": malformed kwh value '" +
                            line.substr(comma + 1) + "'");
        }
        if (!std::isfinite(value)) {
            throw DataError(path + " row " + std::to_string(row) + ": kwh value is not finite");
        }
        if (value < 0.0) {
            throw DataError(path + " row " + std::to_string(row) + ": negative kwh value");
        }

        if (row == 1) {
            trace.start_epoch_hour = stamp;
        } else if (stamp != trace.start_epoch_hour + row - 1) {
            throw DataError(path + " row " + std::to_string(row) +
                            ": timestamps must advance by exactly one hour");
        }
        trace.values.push_back(value);
    }

    if (expected_len >= 0 && row != expected_len) {
        throw DataError(path + ": trace has " + std::to_string(row) + " rows, expected " +
                        std::to_string(expected_len));
    }
    return trace;
}

void write_trace_csv(const EnergyTrace& trace, const std::string& path) {
    std::string out = "timestamp_iso8601,kwh\n";
    out.reserve(out.size() + trace.values.size() * 32);
    char buffer[64];
    for (std::size_t i = 0; i < trace.values.size(); ++i) {
        const std::string stamp =
            iso8601_from_epoch_hours(trace.start_epoch_hour + static_cast<std::int64_t>(i));
        std::snprintf(buffer, sizeof(buffer), "%s,%.6f\n", stamp.c_str(), trace.values[i]);
        out += buffer;
    }
    write_text_file(path, out);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream) {
    std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

SynthesizedTraces synthesize_traces(std::uint64_t seed, const TraceProfile& profile,
                                    std::int64_t horizon_steps,
                                    std::int64_t start_epoch_hour) {
    if (horizon_steps < 1) {
        throw ConfigError("synthesis horizon must be at least 1 step");
    }

    std::mt19937_64 load_rng(derive_seed(seed, 1));
    std::mt19937_64 cloud_rng(derive_seed(seed, 2));
    std::mt19937_64 wind_rng(derive_seed(seed, 3));
    std::uniform_real_distribution<double> load_noise(0.95, 1.05);
    std::uniform_real_distribution<double> cloud_dist(0.35, 1.0);
    std::uniform_real_distribution<double> wind_dist(0.0, 2.0 * profile.wind_mean_kw);

    SynthesizedTraces out;
    out.load.trace_id = "load";
    out.pv.trace_id = "pv";
    out.wind.trace_id = "wind";
    out.load.start_epoch_hour = out.pv.start_epoch_hour = out.wind.start_epoch_hour =
        start_epoch_hour;
    out.load.values.reserve(static_cast<std::size_t>(horizon_steps));
    out.pv.values.reserve(static_cast<std::size_t>(horizon_steps));
    out.wind.values.reserve(static_cast<std::size_t>(horizon_steps));

    // Milking windows: morning 05-07 and late afternoon 16-18, the defining
    // shape of a dairy load curve.
    auto milking_bump = [](int hod) {
        switch (hod) {
        case 5: return 0.70;
        case 6: return 1.00;
        case 7: return 0.60;
        case 16: return 0.65;
        case 17: return 0.95;
        case 18: return 0.55;
        default: return 0.0;
        }
    };

    constexpr double pi = 3.14159265358979323846;
    std::int64_t current_day = floor_div(start_epoch_hour, 24) - 1;
    double cloud = 1.0;
    double wind = profile.wind_mean_kw;

    for (std::int64_t i = 0; i < horizon_steps; ++i) {
        const std::int64_t epoch = start_epoch_hour + i;
        const std::int64_t day = floor_div(epoch, 24);
        const int hod = static_cast<int>(epoch - day * 24);
        if (day != current_day) {
            current_day = day;
            cloud = cloud_dist(cloud_rng);
        }

        const double seasonal = 1.0 + 0.15 * std::sin(2.0 * pi * static_cast<double>(day % 365) /
                                                      365.0);
        const double base = 1.5 * profile.farm_scale;
        const double bump = 4.0 * profile.farm_scale * milking_bump(hod);
        out.load.values.push_back((base + bump) * seasonal * load_noise(load_rng));

        double pv = 0.0;
        if (hod > 6 && hod < 20) {
            const double bell = std::sin(pi * (hod - 6) / 14.0);
            pv = profile.pv_peak_kw * bell * bell * cloud;
        }
        out.pv.values.push_back(pv);

        wind = 0.82 * wind + 0.18 * wind_dist(wind_rng);
        out.wind.values.push_back(wind);
    }
    return out;
}

} // namespace farmtrade
