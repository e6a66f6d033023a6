#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wsnloc/config.hpp"
#include "wsnloc/metrics.hpp"

namespace wsnloc {

struct ReplicationResult {
    std::size_t rep = 0;
    std::uint64_t seed = 0;
    FieldConfig field;  // as deployed, seed = replication seed
    LocalizationOutcome outcome;
    std::vector<ErrorSample> samples;
    std::optional<ErrorStats> stats;  // absent when nothing settled
    std::size_t n_initial = 0;
    std::size_t n_settled = 0;
    std::size_t n_blind = 0;
    std::vector<std::optional<Position>> baseline;  // empty unless cfg.baseline
};

// Replication seeds depend on the master seed and index only, so every node
// count in a sweep sees the same replication seeds.
std::uint64_t replication_seed(std::uint64_t master, std::size_t rep) noexcept;

// deploy -> assign beacons -> connectivity -> rounds -> metrics, in memory.
ReplicationResult run_replication(const ExperimentConfig& cfg, std::size_t rep);

// Runs fn(0..count-1) on up to `jobs` threads (0 = hardware concurrency).
// The first exception thrown by any task is rethrown after all threads join.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

std::vector<ReplicationResult> simulate_experiment(const ExperimentConfig& cfg, unsigned jobs);

struct SweepRow {
    std::size_t n_nodes = 0;
    std::size_t n_reps = 0;
    // Across-replication means of the per-run statistics, over replications
    // that settled at least one node.
    std::optional<double> mean_err;
    std::optional<double> mode_err;  // mode of all pooled samples
    std::optional<double> var_err;
    std::optional<double> std_err;
    double mean_blind = 0.0;
};

SweepRow aggregate(std::size_t n_nodes, std::span<const ReplicationResult> reps);

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::vector<ReplicationResult>> runs;  // parallel to rows
};

SweepResult simulate_sweep(const ExperimentConfig& cfg, unsigned jobs);

// Writes manifest.cfg, summary.csv, pooled cdf.csv and heatmap.csv, per-rep
// directories rep_NNNN/ and the plot/ directory.
void write_experiment(const ExperimentConfig& cfg, std::span<const ReplicationResult> reps,
                      const std::filesystem::path& dir);

std::vector<ReplicationResult> run_experiment(const ExperimentConfig& cfg, unsigned jobs);

// One experiment directory per node count (nodes_NNNN/) plus sweep.csv.
SweepResult run_sweep(const ExperimentConfig& cfg, unsigned jobs);

// Whitespace-delimited plot files under dir/plot, built from the CSV files
// already in dir. Throws IoError when an artifact is missing.
void emit_plot_data(const std::filesystem::path& dir);

std::string rep_dir_name(std::size_t rep);
std::string sweep_dir_name(std::size_t n_nodes);

}  // namespace wsnloc
