#pragma once

#include <array>
#include <string>
#include <vector>

#include "farmtrade/errors.hpp"

namespace farmtrade {

// Time-of-use tier. The total order Night < Day < Peak is relied on by the
// dispatch rules ("cheaper than peak", "night rate only"), so the enum values
// must stay ordered.
enum class TariffTier : int { Night = 0, Day = 1, Peak = 2 };

const char* to_string(TariffTier tier);

// Grid purchase prices per tier plus the feed-in (export) price, with a
// partition of the 24 hours of day into the three tiers.
//
// Invariants (enforced by make()):
//   0 < feed_in_price < night_price < day_price < peak_price
//   every hour of day maps to exactly one tier
struct TariffSchedule {
    double night_price = 0.0;
    double day_price = 0.0;
    double peak_price = 0.0;
    double feed_in_price = 0.0;
    std::array<TariffTier, 24> tier_of_hour{};

    // day_hours may be empty, in which case day is the complement of
    // night_hours and peak_hours. Throws ConfigError on any invariant breach.
    static TariffSchedule make(double night_price, double day_price, double peak_price,
                               double feed_in_price,
                               const std::vector<int>& night_hours,
                               const std::vector<int>& peak_hours,
                               const std::vector<int>& day_hours = {});

    // Night 0.10 (23:00-07:59), day 0.18, peak 0.25 (17:00-18:59),
    // feed-in 0.08. Configuration defaults, overridable per scenario.
    static TariffSchedule defaults();

    std::vector<int> hours_in(TariffTier tier) const;
};

// Returns the tier whose hour set contains hour_of_day. Throws InvariantError
// for hours outside [0, 24).
TariffTier tier_for_hour(int hour_of_day, const TariffSchedule& schedule);

// Purchase price for one tier.
double grid_price(TariffTier tier, const TariffSchedule& schedule);

} // namespace farmtrade
