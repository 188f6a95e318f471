#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cachenet/errors.hpp"
#include "experiment.hpp"
#include "reproduce.hpp"

namespace {

using namespace cachenet;
using namespace cachenet::cli;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitToleranceExceeded = 3;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::map<std::string, std::string> overrides;
};

// --config/--out/--seed plus one flag per config key, so any scenario value
// can be overridden without editing a file.
void add_common_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "scenario file (built-in default if omitted)");
    cmd->add_option("--out", opts.out_path, "output CSV path (stdout if omitted)");
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&opts](std::uint64_t v) { opts.seed = v; },
        "simulation master seed (overrides the config)");
    for (const std::string& key : known_keys()) {
        if (key == "seed") continue;  // the dedicated --seed flag already covers it
        cmd->add_option_function<std::string>(
            "--" + key, [&opts, key](const std::string& v) { opts.overrides[key] = v; },
            "override config key '" + key + "'");
    }
}

ExperimentSpec spec_from(const CommonOptions& opts) {
    RawConfig raw = opts.config_path.empty()
                        ? parse_raw_config(default_config_text(), "<built-in>")
                        : load_raw_config_file(opts.config_path);
    for (const auto& [key, value] : opts.overrides) apply_override(raw, key, value);
    ExperimentSpec spec = build_spec(raw);
    if (opts.seed) spec.seed = *opts.seed;
    return spec;
}

// Runs `body(stream)` against stdout or the requested file.
template <typename Body>
void with_output(const std::string& path, Body&& body) {
    if (path.empty()) {
        body(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    body(out);
}

std::string sidecar_path(const std::string& csv_path) {
    std::string stem = csv_path;
    if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0)
        stem.resize(stem.size() - 4);
    return stem + "_report.txt";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analytical model and slot-level simulator of a wireless caching helper"};
    app.require_subcommand(1);

    CommonOptions analyze_opts, optimize_opts, simulate_opts, reproduce_opts;
    std::string target;

    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "closed-form throughput and delay over a sweep");
    add_common_options(analyze_cmd, analyze_opts);

    CLI::App* optimize_cmd =
        app.add_subcommand("optimize", "maximize the weighted sum throughput");
    add_common_options(optimize_cmd, optimize_opts);

    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "Monte Carlo run cross-checked against the closed forms");
    add_common_options(simulate_cmd, simulate_opts);

    CLI::App* reproduce_cmd =
        app.add_subcommand("reproduce", "regenerate a published table or figure dataset");
    reproduce_cmd->add_option("target", target, "one of: table2..table8, fig2, fig5..fig11")
        ->required();
    add_common_options(reproduce_cmd, reproduce_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (analyze_cmd->parsed()) {
            ExperimentSpec spec = spec_from(analyze_opts);
            with_output(analyze_opts.out_path, [&](std::ostream& out) { run_analyze(spec, out); });
        } else if (optimize_cmd->parsed()) {
            ExperimentSpec spec = spec_from(optimize_opts);
            with_output(optimize_opts.out_path,
                        [&](std::ostream& out) { run_optimize(spec, out); });
        } else if (simulate_cmd->parsed()) {
            ExperimentSpec spec = spec_from(simulate_opts);
            with_output(simulate_opts.out_path,
                        [&](std::ostream& out) { run_simulate(spec, out); });
        } else if (reproduce_cmd->parsed()) {
            ExperimentSpec spec = spec_from(reproduce_opts);
            std::string csv_path =
                reproduce_opts.out_path.empty() ? target + ".csv" : reproduce_opts.out_path;
            std::string report_path = sidecar_path(csv_path);

            std::ofstream csv(csv_path);
            if (!csv) throw ConfigError("cannot open output file '" + csv_path + "'");
            std::ofstream report(report_path);
            if (!report) throw ConfigError("cannot open output file '" + report_path + "'");

            bool ok = run_reproduce(target, spec, csv, report);
            std::cout << "wrote " << csv_path << " and " << report_path << " ("
                      << (ok ? "PASS" : "FAIL") << ")\n";
            if (!ok) return kExitToleranceExceeded;
        }
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible scenario: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
    return kExitOk;
}
