#include "farmtrade/tariff.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace farmtrade {

const char* to_string(TariffTier tier) {
    switch (tier) {
    case TariffTier::Night: return "night";
    case TariffTier::Day: return "day";
    case TariffTier::Peak: return "peak";
    }
    throw InvariantError("unknown tariff tier value " +
                         std::to_string(static_cast<int>(tier)));
}

namespace {

// Marks the given hours with `tier`, rejecting out-of-range hours and
// collisions with an already-assigned tier.
void assign_hours(std::array<int, 24>& owner, const std::vector<int>& hours, TariffTier tier,
                  const char* set_name) {
    for (int hour : hours) {
        if (hour < 0 || hour >= 24) {
            throw ConfigError(std::string(set_name) + " contains hour " +
                              std::to_string(hour) + ", outside [0, 24)");
        }
        if (owner[static_cast<std::size_t>(hour)] >= 0) {
            throw ConfigError("hour " + std::to_string(hour) +
                              " assigned to more than one tariff tier");
        }
        owner[static_cast<std::size_t>(hour)] = static_cast<int>(tier);
    }
}

} // namespace

TariffSchedule TariffSchedule::make(double night_price, double day_price, double peak_price,
                                    double feed_in_price,
                                    const std::vector<int>& night_hours,
                                    const std::vector<int>& peak_hours,
                                    const std::vector<int>& day_hours) {
    if (!(feed_in_price > 0.0)) {
        throw ConfigError("feed-in price must be positive");
    }
    if (!(feed_in_price < night_price && night_price < day_price && day_price < peak_price)) {
        throw ConfigError("tariff prices must satisfy feed_in < night < day < peak strictly");
    }

    std::array<int, 24> owner{};
    owner.fill(-1);
    assign_hours(owner, night_hours, TariffTier::Night, "night_hours");
    assign_hours(owner, peak_hours, TariffTier::Peak, "peak_hours");
    if (day_hours.empty()) {
        for (auto& slot : owner) {
            if (slot < 0) slot = static_cast<int>(TariffTier::Day);
        }
    } else {
        assign_hours(owner, day_hours, TariffTier::Day, "day_hours");
        for (int hour = 0; hour < 24; ++hour) {
            if (owner[static_cast<std::size_t>(hour)] < 0) {
                throw ConfigError("hour " + std::to_string(hour) +
                                  " not assigned to any tariff tier");
            }
        }
    }

    TariffSchedule schedule;
    schedule.night_price = night_price;
    schedule.day_price = day_price;
    schedule.peak_price = peak_price;
    schedule.feed_in_price = feed_in_price;
    for (int hour = 0; hour < 24; ++hour) {
        schedule.tier_of_hour[static_cast<std::size_t>(hour)] =
            static_cast<TariffTier>(owner[static_cast<std::size_t>(hour)]);
    }
    return schedule;
}

TariffSchedule TariffSchedule::defaults() {
    return make(0.10, 0.18, 0.25, 0.08,
                /*night_hours=*/{23, 0, 1, 2, 3, 4, 5, 6, 7},
                /*peak_hours=*/{17, 18});
}

std::vector<int> TariffSchedule::hours_in(TariffTier tier) const {
    std::vector<int> hours;
    for (int hour = 0; hour < 24; ++hour) {
        if (tier_of_hour[static_cast<std::size_t>(hour)] == tier) hours.push_back(hour);
    }
    return hours;
}

TariffTier tier_for_hour(int hour_of_day, const TariffSchedule& schedule) {
    if (hour_of_day < 0 || hour_of_day >= 24) {
        throw InvariantError("hour_of_day " + std::to_string(hour_of_day) +
                             " outside [0, 24)");
    }
    return schedule.tier_of_hour[static_cast<std::size_t>(hour_of_day)];
}

double grid_price(TariffTier tier, const TariffSchedule& schedule) {
    switch (tier) {
    case TariffTier::Night: return schedule.night_price;
    case TariffTier::Day: return schedule.day_price;
    case TariffTier::Peak: return schedule.peak_price;
    }
    throw InvariantError("unknown tariff tier value " +
                         std::to_string(static_cast<int>(tier)));
}

} // namespace farmtrade
