// Command-line front end: single experiments and node-count sweeps.
//
// Precedence is CLI flag > --config file > built-in default. Exit status is
// 0 on success, 2 for configuration errors and 3 for I/O errors.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "wsnloc/config.hpp"
#include "wsnloc/errors.hpp"
#include "wsnloc/experiment.hpp"
#include "wsnloc/format.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

const std::map<std::string, std::string> kHelp{
    {"nodes", "Number of deployed nodes"},
    {"field-width", "Field width in meters"},
    {"field-height", "Field height in meters"},
    {"radio-range", "Radio range r in meters"},
    {"beacon-fraction", "Fraction of nodes that start as beacons"},
    {"beacon-strategy", "Initial beacon placement: random | grid"},
    {"model", "Reception model: ideal | ramp | shadowing"},
    {"ramp-inner", "Ramp model: fraction of r with certain reception"},
    {"shadow-sigma", "Shadowing model: standard deviation in dB"},
    {"shadow-exponent", "Shadowing model: path loss exponent"},
    {"beacon-period", "Beacon period T in seconds"},
    {"sample-time", "Sampling window T_s in seconds"},
    {"thresholds", "Proximity-factor band lower bounds, comma separated, ending at 0"},
    {"min-bucket", "Minimum beacons per band"},
    {"max-rounds", "Upper bound on localization rounds"},
    {"cm-threshold", "Baseline connectivity-metric threshold in percent"},
    {"seed", "Master seed"},
    {"reps", "Replications per node count"},
    {"sweep", "Comma separated node counts; runs a sweep instead of one experiment"},
    {"cell-size", "Heatmap cell size in meters"},
    {"cdf-bin", "CDF bin width in normalized error units"},
    {"out", "Output directory"},
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Range-free connectivity-based localization simulator"};

    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    for (const auto& key : wsnloc::config_keys()) {
        if (key == "baseline")
            continue;
        options[key] = app.add_option("--" + key, values[key], kHelp.at(key));
    }
    bool baseline = false;
    auto* baseline_opt = app.add_flag("--baseline", baseline, "Also run the single-shot connectivity-metric centroid baseline");
    std::string config_path;
    app.add_option("--config", config_path, "Flat key = value configuration file");
    unsigned jobs = 0;
    app.add_option("--jobs", jobs, "Worker threads for replications (0 = all cores); output is independent of this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        wsnloc::ExperimentConfig cfg;
        if (!config_path.empty())
            wsnloc::apply_config_file(cfg, config_path);
        for (const auto& [key, opt] : options)
            if (opt->count() > 0)
                cfg.set(key, values[key]);
        if (baseline_opt->count() > 0)
            cfg.baseline = baseline;
        cfg.validate();

        if (cfg.sweep.empty()) {
            const auto reps = wsnloc::run_experiment(cfg, jobs);
            const auto row = wsnloc::aggregate(cfg.field.node_count, reps);
            std::cout << "nodes " << row.n_nodes << ", reps " << row.n_reps << ", mean_err "
                      << (row.mean_err ? wsnloc::format_value(*row.mean_err) : "n/a") << ", mean_blind "
                      << wsnloc::format_value(row.mean_blind) << "\n";
        } else {
            const auto sweep = wsnloc::run_sweep(cfg, jobs);
            for (const auto& row : sweep.rows)
                std::cout << "nodes " << row.n_nodes << ", reps " << row.n_reps << ", mean_err "
                          << (row.mean_err ? wsnloc::format_value(*row.mean_err) : "n/a") << ", mean_blind "
                          << wsnloc::format_value(row.mean_blind) << "\n";
        }
        std::cout << "wrote " << cfg.out.string() << "\n";
    } catch (const wsnloc::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const wsnloc::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
