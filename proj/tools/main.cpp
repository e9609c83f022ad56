#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "farmtrade/config_json.hpp"
#include "farmtrade/errors.hpp"
#include "farmtrade/metrics.hpp"
#include "farmtrade/report_io.hpp"
#include "farmtrade/sim_engine.hpp"
#include "farmtrade/synth_community.hpp"
#include "farmtrade/trace.hpp"

namespace {

namespace fs = std::filesystem;
using namespace farmtrade;

// Exit codes are part of the tool's contract; scripts branch on them.
constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitInvariant = 4;

struct CommonArgs {
    std::string config_path;
    std::string output_dir;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
}

int run_simulate(const CommonArgs& args) {
    LoadedScenario loaded = load_scenario_file(args.config_path);
    if (args.seed) {
        loaded.config.seed = *args.seed;
    }
    ScenarioReport report = run_simulation(loaded.config, loaded.traces);

    const fs::path out(args.output_dir);
    ensure_dir(out);
    const fs::path report_path =
        out / (args.format == "json" ? "report.json" : "report.csv");
    write_text_file(report_path.string(),
                    args.format == "json" ? report_json(report) : report_csv(report));
    const fs::path audit_path = out / "audit.jsonl";
    write_text_file(audit_path.string(), audit_jsonl(report));

    std::printf("scenario %s: %zu steps, %zu farms\n", report.scenario_id.c_str(),
                report.steps.size(), report.farm_totals.size());
    std::printf("purchase cost %.2f, sold revenue %.2f, grid import %.2f kWh\n",
                report.totals.purchase_cost, report.totals.sold_revenue,
                report.totals.grid_import_kwh);
    std::printf("wrote %s and %s\n", report_path.string().c_str(),
                audit_path.string().c_str());
    return kExitOk;
}

int run_compare(const CommonArgs& args) {
    LoadedComparison loaded = load_comparison_file(args.config_path);
    if (args.seed) {
        loaded.base.seed = *args.seed;
        for (ScenarioConfig& variant : loaded.variants) {
            variant.seed = *args.seed;
        }
    }
    ComparisonResult result = run_comparison(loaded.base, loaded.variants, loaded.traces);
    const std::vector<MetricDelta> deltas = comparison_metrics(result);

    const fs::path out(args.output_dir);
    ensure_dir(out);
    const fs::path path =
        out / (args.format == "json" ? "comparison.json" : "comparison.csv");
    write_text_file(path.string(), args.format == "json"
                                       ? comparison_json(result, deltas)
                                       : comparison_csv(deltas));

    for (const MetricDelta& d : deltas) {
        if (d.delta_percent) {
            std::printf("%s %s: %.4f -> %.4f (%+.2f%%)\n", d.variant_id.c_str(),
                        d.metric.c_str(), d.base_value, d.variant_value,
                        *d.delta_percent);
        } else {
            std::printf("%s %s: %.4f -> %.4f (base is zero)\n", d.variant_id.c_str(),
                        d.metric.c_str(), d.base_value, d.variant_value);
        }
    }
    std::printf("wrote %s\n", path.string().c_str());
    return kExitOk;
}

int run_synth_data(const std::string& output_dir, std::uint64_t seed,
                   std::int64_t horizon, int farms) {
    CommunityBlueprint blueprint;
    blueprint.seed = seed;
    blueprint.horizon_steps = horizon;
    blueprint.farm_count = farms;
    SyntheticCommunity community = build_synthetic_community(blueprint);

    const fs::path out(output_dir);
    ensure_dir(out / "traces");
    for (const auto& [ref, trace] : community.traces) {
        write_trace_csv(trace, (out / ref).string());
    }
    write_text_file((out / "scenario.json").string(),
                    scenario_to_json(community.re_p2p));
    write_text_file((out / "comparison.json").string(),
                    comparison_to_json(community.re_only,
                                       {community.re_p2p, community.no_re}));

    std::printf("wrote %zu traces, scenario.json, comparison.json to %s\n",
                community.traces.size(), out.string().c_str());
    return kExitOk;
}

int run_validate_data(const std::string& config_path) {
    std::string text;
    try {
        text = slurp(config_path);
    } catch (const DataError&) {
        throw ConfigError("cannot open config file: " + config_path);
    }
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(config_path + ": not valid JSON: " + e.what());
    }
    if (root.is_object() && root.contains("variants")) {
        LoadedComparison loaded = load_comparison_file(config_path);
        std::printf("OK: comparison of %zu variants against %s, %lld steps, %zu traces\n",
                    loaded.variants.size(), loaded.base.scenario_id.c_str(),
                    static_cast<long long>(loaded.base.horizon_steps),
                    loaded.traces.size());
    } else {
        LoadedScenario loaded = load_scenario_file(config_path);
        std::printf("OK: scenario %s, %zu farms, %lld steps, %zu traces\n",
                    loaded.config.scenario_id.c_str(), loaded.config.farms.size(),
                    static_cast<long long>(loaded.config.horizon_steps),
                    loaded.traces.size());
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"farmtrade: hourly peer-to-peer energy trading simulator for farm communities"};
    app.require_subcommand(1);

    CommonArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "Run one scenario and write report + audit log");
    simulate->add_option("--config", sim_args.config_path, "Scenario config JSON")->required();
    simulate->add_option("--out", sim_args.output_dir, "Output directory")->required();
    simulate->add_option("--format", sim_args.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    simulate->add_option("--seed", sim_args.seed, "Override the scenario seed");

    CommonArgs cmp_args;
    CLI::App* compare = app.add_subcommand("compare", "Run base + variants and write metric deltas");
    compare->add_option("--config", cmp_args.config_path, "Comparison config JSON")->required();
    compare->add_option("--out", cmp_args.output_dir, "Output directory")->required();
    compare->add_option("--format", cmp_args.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    compare->add_option("--seed", cmp_args.seed, "Override every scenario seed");

    std::string synth_out;
    std::uint64_t synth_seed = 42;
    std::int64_t synth_horizon = 8760;
    int synth_farms = 10;
    CLI::App* synth = app.add_subcommand("synth-data", "Generate a synthetic community with traces and configs");
    synth->add_option("--out", synth_out, "Output directory")->required();
    synth->add_option("--seed", synth_seed, "Master seed")->capture_default_str();
    synth->add_option("--horizon", synth_horizon, "Steps to generate")->capture_default_str();
    synth->add_option("--farms", synth_farms, "Number of farms")->capture_default_str();

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate-data", "Check a scenario or comparison config and its traces");
    validate->add_option("--config", validate_path, "Config JSON to validate")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim_args);
        if (compare->parsed()) return run_compare(cmp_args);
        if (synth->parsed()) return run_synth_data(synth_out, synth_seed, synth_horizon, synth_farms);
        if (validate->parsed()) return run_validate_data(validate_path);
        std::fprintf(stderr, "no subcommand selected\n");
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kExitData;
    } catch (const InvariantError& e) {
        std::fprintf(stderr, "invariant breach: %s\n", e.what());
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return kExitUnexpected;
    }
}
