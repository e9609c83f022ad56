#include "farmtrade/config_json.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

namespace farmtrade {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// A typoed key silently falling back to a default would skew results, so
// every object is checked against its allowed key set.
void reject_unknown_keys(const json& object, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        (void)value;
        if (allowed.count(key) == 0) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
}

const json& require(const json& object, const char* key, const std::string& where) {
    const auto it = object.find(key);
    if (it == object.end()) {
        throw ConfigError(where + ": missing required key '" + std::string(key) + "'");
    }
    return *it;
}

double number_at(const json& object, const char* key, const std::string& where,
                 double fallback, bool required = false) {
    const auto it = object.find(key);
    if (it == object.end()) {
        if (required) {
            throw ConfigError(where + ": missing required key '" + std::string(key) + "'");
        }
        return fallback;
    }
    if (!it->is_number()) {
        throw ConfigError(where + ": '" + key + "' must be a number");
    }
    return it->get<double>();
}

std::vector<int> hour_list(const json& object, const char* key, const std::string& where) {
    const auto it = object.find(key);
    if (it == object.end()) return {};
    if (!it->is_array()) {
        throw ConfigError(where + ": '" + key + "' must be an array of hours");
    }
    std::vector<int> hours;
    for (const auto& entry : *it) {
        if (!entry.is_number_integer()) {
            throw ConfigError(where + ": '" + key + "' must contain integers");
        }
        hours.push_back(entry.get<int>());
    }
    return hours;
}

TariffSchedule parse_tariff(const json& object, const std::string& where) {
    reject_unknown_keys(object,
                        {"night_price", "day_price", "peak_price", "feed_in_price",
                         "night_hours", "day_hours", "peak_hours"},
                        where);
    const TariffSchedule defaults = TariffSchedule::defaults();
    std::vector<int> night_hours = hour_list(object, "night_hours", where);
    std::vector<int> peak_hours = hour_list(object, "peak_hours", where);
    std::vector<int> day_hours = hour_list(object, "day_hours", where);
    if (night_hours.empty() && peak_hours.empty() && day_hours.empty()) {
        night_hours = defaults.hours_in(TariffTier::Night);
        peak_hours = defaults.hours_in(TariffTier::Peak);
    } else if (night_hours.empty() || peak_hours.empty()) {
        throw ConfigError(where + ": custom tariff hours need both night_hours and peak_hours");
    }
    return TariffSchedule::make(
        number_at(object, "night_price", where, defaults.night_price),
        number_at(object, "day_price", where, defaults.day_price),
        number_at(object, "peak_price", where, defaults.peak_price),
        number_at(object, "feed_in_price", where, defaults.feed_in_price), night_hours,
        peak_hours, day_hours);
}

BatterySpec parse_battery(const json& object, const std::string& where) {
    reject_unknown_keys(object, {"capacity_kwh", "max_charge_kwh", "max_discharge_kwh"}, where);
    BatterySpec spec;
    spec.capacity_kwh = number_at(object, "capacity_kwh", where, spec.capacity_kwh);
    spec.max_charge_kwh = number_at(object, "max_charge_kwh", where, spec.max_charge_kwh);
    spec.max_discharge_kwh =
        number_at(object, "max_discharge_kwh", where, spec.max_discharge_kwh);
    spec.validate();
    return spec;
}

bool flag_at(const json& object, const char* key, const std::string& where) {
    const auto it = object.find(key);
    if (it == object.end()) return false;
    if (!it->is_boolean()) {
        throw ConfigError(where + ": '" + key + "' must be a boolean");
    }
    return it->get<bool>();
}

std::string string_at(const json& object, const char* key, const std::string& where,
                      bool required, const std::string& fallback = {}) {
    const auto it = object.find(key);
    if (it == object.end()) {
        if (required) {
            throw ConfigError(where + ": missing required key '" + std::string(key) + "'");
        }
        return fallback;
    }
    if (!it->is_string()) {
        throw ConfigError(where + ": '" + key + "' must be a string");
    }
    return it->get<std::string>();
}

FarmConfig parse_farm(const json& object, const std::string& where) {
    if (!object.is_object()) {
        throw ConfigError(where + ": farm entries must be objects");
    }
    reject_unknown_keys(object,
                        {"farm_id", "has_pv", "has_wind", "has_battery", "battery",
                         "initial_soc_percent", "load_trace", "pv_trace", "wind_trace"},
                        where);
    FarmConfig farm;
    farm.farm_id = string_at(object, "farm_id", where, /*required=*/true);
    const std::string scope = where + " farm '" + farm.farm_id + "'";
    farm.has_pv = flag_at(object, "has_pv", scope);
    farm.has_wind = flag_at(object, "has_wind", scope);
    farm.has_battery = flag_at(object, "has_battery", scope);
    if (const auto it = object.find("battery"); it != object.end()) {
        if (!farm.has_battery) {
            throw ConfigError(scope + ": battery block given but has_battery is false");
        }
        farm.battery_spec = parse_battery(*it, scope + " battery");
    }
    farm.initial_soc_percent =
        number_at(object, "initial_soc_percent", scope, farm.initial_soc_percent);
    farm.load_trace_ref = string_at(object, "load_trace", scope, /*required=*/true);
    farm.pv_trace_ref = string_at(object, "pv_trace", scope, /*required=*/false);
    farm.wind_trace_ref = string_at(object, "wind_trace", scope, /*required=*/false);
    return farm;
}

ScenarioConfig parse_scenario_object(const json& object, const std::string& where) {
    if (!object.is_object()) {
        throw ConfigError(where + ": scenario must be a JSON object");
    }
    reject_unknown_keys(object,
                        {"scenario_id", "horizon_steps", "seed", "p2p_enabled", "start_time",
                         "tariff", "farms"},
                        where);
    ScenarioConfig config;
    config.scenario_id = string_at(object, "scenario_id", where, /*required=*/true);
    const json& horizon = require(object, "horizon_steps", where);
    if (!horizon.is_number_integer() || horizon.get<std::int64_t>() < 1) {
        throw ConfigError(where + ": horizon_steps must be a positive integer");
    }
    config.horizon_steps = horizon.get<std::int64_t>();
    if (const auto it = object.find("seed"); it != object.end()) {
        if (!it->is_number_unsigned() && !it->is_number_integer()) {
            throw ConfigError(where + ": seed must be an integer");
        }
        config.seed = it->get<std::uint64_t>();
    }
    if (const auto it = object.find("p2p_enabled"); it != object.end()) {
        if (!it->is_boolean()) {
            throw ConfigError(where + ": p2p_enabled must be a boolean");
        }
        config.p2p_enabled = it->get<bool>();
    }
    if (const auto it = object.find("start_time"); it != object.end()) {
        if (!it->is_string()) {
            throw ConfigError(where + ": start_time must be an ISO 8601 string");
        }
        try {
            config.start_epoch_hour = parse_iso8601_hour(it->get<std::string>());
        } catch (const DataError& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
    if (const auto it = object.find("tariff"); it != object.end()) {
        if (!it->is_object()) {
            throw ConfigError(where + ": tariff must be an object");
        }
        config.tariff = parse_tariff(*it, where + " tariff");
    }
    const json& farms = require(object, "farms", where);
    if (!farms.is_array() || farms.empty()) {
        throw ConfigError(where + ": farms must be a non-empty array");
    }
    for (const auto& entry : farms) {
        config.farms.push_back(parse_farm(entry, where));
    }
    config.validate();
    return config;
}

json parse_text(const std::string& text, const std::string& source_name) {
    json parsed = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (parsed.is_discarded()) {
        throw ConfigError(source_name + ": not valid JSON");
    }
    return parsed;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Trace refs in config files are paths relative to the config file.
void collect_traces(const ScenarioConfig& config, const std::filesystem::path& base_dir,
                    TraceSet& traces) {
    const auto load = [&](const std::string& ref) {
        if (ref.empty() || traces.count(ref) != 0) return;
        const std::filesystem::path path = base_dir / ref;
        EnergyTrace trace = load_trace_csv(path.string(), config.horizon_steps);
        trace.trace_id = ref;
        traces.emplace(ref, std::move(trace));
    };
    for (const FarmConfig& farm : config.farms) {
        load(farm.load_trace_ref);
        if (farm.has_pv) load(farm.pv_trace_ref);
        if (farm.has_wind) load(farm.wind_trace_ref);
    }
}

} // namespace

ScenarioConfig parse_scenario_json(const std::string& text, const std::string& source_name) {
    return parse_scenario_object(parse_text(text, source_name), source_name);
}

LoadedScenario load_scenario_file(const std::string& path) {
    LoadedScenario loaded;
    loaded.config = parse_scenario_json(read_file(path), path);
    collect_traces(loaded.config, std::filesystem::path(path).parent_path(), loaded.traces);
    return loaded;
}

LoadedComparison load_comparison_file(const std::string& path) {
    const json root = parse_text(read_file(path), path);
    if (!root.is_object()) {
        throw ConfigError(path + ": comparison config must be a JSON object");
    }
    reject_unknown_keys(root, {"base", "variants"}, path);
    LoadedComparison loaded;
    loaded.base = parse_scenario_object(require(root, "base", path), path + " base");
    const json& variants = require(root, "variants", path);
    if (!variants.is_array() || variants.empty()) {
        throw ConfigError(path + ": variants must be a non-empty array");
    }
    for (std::size_t i = 0; i < variants.size(); ++i) {
        ScenarioConfig variant = parse_scenario_object(
            variants[i], path + " variant[" + std::to_string(i) + "]");
        if (variant.horizon_steps != loaded.base.horizon_steps) {
            throw ConfigError(path + ": variant '" + variant.scenario_id + "' has horizon " +
                              std::to_string(variant.horizon_steps) + ", base has " +
                              std::to_string(loaded.base.horizon_steps));
        }
        loaded.variants.push_back(std::move(variant));
    }

    const std::filesystem::path base_dir = std::filesystem::path(path).parent_path();
    collect_traces(loaded.base, base_dir, loaded.traces);
    for (const ScenarioConfig& variant : loaded.variants) {
        collect_traces(variant, base_dir, loaded.traces);
    }
    return loaded;
}

namespace {

ordered_json scenario_object(const ScenarioConfig& config) {
    ordered_json j;
    j["scenario_id"] = config.scenario_id;
    j["horizon_steps"] = config.horizon_steps;
    j["seed"] = config.seed;
    j["p2p_enabled"] = config.p2p_enabled;
    j["start_time"] = iso8601_from_epoch_hours(config.start_epoch_hour);
    ordered_json tariff;
    tariff["night_price"] = config.tariff.night_price;
    tariff["day_price"] = config.tariff.day_price;
    tariff["peak_price"] = config.tariff.peak_price;
    tariff["feed_in_price"] = config.tariff.feed_in_price;
    tariff["night_hours"] = config.tariff.hours_in(TariffTier::Night);
    tariff["peak_hours"] = config.tariff.hours_in(TariffTier::Peak);
    j["tariff"] = std::move(tariff);
    ordered_json farms = ordered_json::array();
    for (const FarmConfig& farm : config.farms) {
        ordered_json f;
        f["farm_id"] = farm.farm_id;
        f["has_pv"] = farm.has_pv;
        f["has_wind"] = farm.has_wind;
        f["has_battery"] = farm.has_battery;
        if (farm.has_battery) {
            ordered_json battery;
            battery["capacity_kwh"] = farm.battery_spec.capacity_kwh;
            battery["max_charge_kwh"] = farm.battery_spec.max_charge_kwh;
            battery["max_discharge_kwh"] = farm.battery_spec.max_discharge_kwh;
            f["battery"] = std::move(battery);
            f["initial_soc_percent"] = farm.initial_soc_percent;
        }
        f["load_trace"] = farm.load_trace_ref;
        if (farm.has_pv) f["pv_trace"] = farm.pv_trace_ref;
        if (farm.has_wind) f["wind_trace"] = farm.wind_trace_ref;
        farms.push_back(std::move(f));
    }
    j["farms"] = std::move(farms);
    return j;
}

} // namespace

std::string scenario_to_json(const ScenarioConfig& config) {
    return scenario_object(config).dump(2) + "\n";
}

std::string comparison_to_json(const ScenarioConfig& base,
                               const std::vector<ScenarioConfig>& variants) {
    ordered_json j;
    j["base"] = scenario_object(base);
    ordered_json list = ordered_json::array();
    for (const ScenarioConfig& variant : variants) {
        list.push_back(scenario_object(variant));
    }
    j["variants"] = std::move(list);
    return j.dump(2) + "\n";
}

} // namespace farmtrade
