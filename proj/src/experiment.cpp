#include "wsnloc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "wsnloc/errors.hpp"
#include "wsnloc/format.hpp"
#include "wsnloc/rng.hpp"

namespace wsnloc {

namespace fs = std::filesystem;

std::uint64_t replication_seed(std::uint64_t master, std::size_t rep) noexcept
{
    return derive_seed(derive_seed(master, "replication"), static_cast<std::uint64_t>(rep));
}

std::string rep_dir_name(std::size_t rep)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "rep_%04zu", rep);
    return buf;
}

std::string sweep_dir_name(std::size_t n_nodes)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "nodes_%04zu", n_nodes);
    return buf;
}

ReplicationResult run_replication(const ExperimentConfig& cfg, std::size_t rep)
{
    ReplicationResult result;
    result.rep = rep;
    result.seed = replication_seed(cfg.field.seed, rep);
    result.field = cfg.field;
    result.field.seed = result.seed;

    const ReceptionModel model = cfg.reception_model();
    auto nodes = assign_initial_beacons(deploy_uniform(result.field), result.field, cfg.beacon_strategy);
    const ConnectivityGraph graph = build_connectivity(nodes, result.field.radio_range);

    if (cfg.baseline)
        result.baseline = run_bulusu_baseline(nodes, graph, model, cfg.sampling, cfg.cm_threshold,
                                              derive_seed(result.seed, "baseline"));

    RoundSettings settings{cfg.sampling, cfg.scheme, cfg.max_rounds, derive_seed(result.seed, "reception")};
    result.outcome = run_rounds(std::move(nodes), graph, model, settings);

    result.samples = error_samples(result.outcome, result.field.radio_range);
    if (!result.samples.empty())
        result.stats = error_stats(error_values(result.samples));
    result.n_initial = result.outcome.count(Role::InitialBeacon);
    result.n_settled = result.outcome.count(Role::Settled);
    result.n_blind = count_blind(result.outcome);
    return result;
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn)
{
    if (jobs == 0)
        jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : workers)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

std::vector<ReplicationResult> simulate_experiment(const ExperimentConfig& cfg, unsigned jobs)
{
    cfg.validate();
    std::vector<ReplicationResult> results(cfg.reps);
    parallel_for(cfg.reps, jobs, [&](std::size_t rep) { results[rep] = run_replication(cfg, rep); });
    return results;
}

SweepRow aggregate(std::size_t n_nodes, std::span<const ReplicationResult> reps)
{
    SweepRow row;
    row.n_nodes = n_nodes;
    row.n_reps = reps.size();

    std::vector<double> pooled;
    double mean_sum = 0.0, var_sum = 0.0, std_sum = 0.0, blind_sum = 0.0;
    std::size_t with_stats = 0;
    for (const auto& r : reps) {
        blind_sum += static_cast<double>(r.n_blind);
        for (const auto& s : r.samples)
            pooled.push_back(s.err_norm);
        if (!r.stats)
            continue;
        ++with_stats;
        mean_sum += r.stats->mean;
        var_sum += r.stats->variance;
        std_sum += r.stats->stddev;
    }
    if (!reps.empty())
        row.mean_blind = blind_sum / static_cast<double>(reps.size());
    if (with_stats > 0) {
        const auto n = static_cast<double>(with_stats);
        row.mean_err = mean_sum / n;
        row.var_err = var_sum / n;
        row.std_err = std_sum / n;
        row.mode_err = mode_one_decimal(pooled);
    }
    return row;
}

SweepResult simulate_sweep(const ExperimentConfig& cfg, unsigned jobs)
{
    cfg.validate();
    if (cfg.sweep.empty())
        throw ConfigError("sweep", "no node counts given");

    SweepResult result;
    result.runs.assign(cfg.sweep.size(), std::vector<ReplicationResult>(cfg.reps));
    std::vector<ExperimentConfig> per_count(cfg.sweep.size(), cfg);
    for (std::size_t i = 0; i < cfg.sweep.size(); ++i) {
        per_count[i].field.node_count = cfg.sweep[i];
        per_count[i].sweep.clear();
    }
    parallel_for(cfg.sweep.size() * cfg.reps, jobs, [&](std::size_t task) {
        const std::size_t i = task / cfg.reps;
        const std::size_t rep = task % cfg.reps;
        result.runs[i][rep] = run_replication(per_count[i], rep);
    });
    for (std::size_t i = 0; i < cfg.sweep.size(); ++i)
        result.rows.push_back(aggregate(cfg.sweep[i], result.runs[i]));
    return result;
}

namespace {

std::string opt_value(const std::optional<double>& v)
{
    return v ? format_value(*v) : std::string();
}

std::string nodes_csv(const ReplicationResult& r)
{
    std::string s = "node_id,true_x,true_y,role,est_x,est_y,err_norm,settled_round\n";
    for (const auto& node : r.outcome.nodes) {
        s += std::to_string(node.id) + ',' + format_value(node.pos.x) + ',' + format_value(node.pos.y) + ',';
        s += to_string(node.role);
        if (node.role == Role::Settled && node.est) {
            s += ',' + format_value(node.est->x) + ',' + format_value(node.est->y) + ',' +
                 format_value(localization_error(node.pos, *node.est, r.field.radio_range)) + ',' +
                 std::to_string(*node.settled_round);
        } else {
            s += ",,,,";
        }
        s += '\n';
    }
    return s;
}

std::string summary_row(const ReplicationResult& r)
{
    std::string s = std::to_string(r.rep) + ',' + std::to_string(r.seed) + ',' +
                    std::to_string(r.outcome.nodes.size()) + ',' + std::to_string(r.n_initial) + ',' +
                    std::to_string(r.n_settled) + ',' + std::to_string(r.n_blind) + ',';
    if (r.stats)
        s += format_value(r.stats->mean) + ',' + format_value(r.stats->mode_1dp) + ',' +
             format_value(r.stats->variance) + ',' + format_value(r.stats->stddev);
    else
        s += ",,,";
    s += ',' + std::to_string(r.outcome.rounds_executed) + '\n';
    return s;
}

std::string cdf_csv(std::span<const double> values, double bin)
{
    std::string s = "err_bin_upper,cum_fraction\n";
    if (values.empty())
        return s;
    for (const auto& p : error_cdf(values, bin))
        s += format_value(p.upper_edge) + ',' + format_value(p.cumulative_fraction) + '\n';
    return s;
}

std::string heatmap_csv(const Heatmap& map)
{
    std::string s = "cell_x,cell_y,mean_err,count\n";
    for (std::size_t row = 0; row < map.rows(); ++row) {
        for (std::size_t col = 0; col < map.columns(); ++col) {
            const auto& cell = map.at(col, row);
            s += std::to_string(col) + ',' + std::to_string(row) + ',' + opt_value(cell.mean()) + ',' +
                 std::to_string(cell.count) + '\n';
        }
    }
    return s;
}

std::string baseline_csv(const ReplicationResult& r)
{
    std::string s = "node_id,true_x,true_y,est_x,est_y,err_norm\n";
    for (const auto& node : r.outcome.nodes) {
        if (node.role == Role::InitialBeacon)
            continue;
        s += std::to_string(node.id) + ',' + format_value(node.pos.x) + ',' + format_value(node.pos.y) + ',';
        if (const auto& est = r.baseline[node.id])
            s += format_value(est->x) + ',' + format_value(est->y) + ',' +
                 format_value(localization_error(node.pos, *est, r.field.radio_range));
        else
            s += ",,";
        s += '\n';
    }
    return s;
}

std::string baseline_summary_row(const ReplicationResult& r)
{
    std::vector<double> errs;
    std::size_t unlocalized = 0;
    for (const auto& node : r.outcome.nodes) {
        if (node.role == Role::InitialBeacon)
            continue;
        if (const auto& est = r.baseline[node.id])
            errs.push_back(localization_error(node.pos, *est, r.field.radio_range));
        else
            ++unlocalized;
    }
    std::string s = std::to_string(r.rep) + ',' + std::to_string(errs.size()) + ',' + std::to_string(unlocalized) + ',';
    if (!errs.empty()) {
        const auto st = error_stats(errs);
        s += format_value(st.mean) + ',' + format_value(st.mode_1dp) + ',' + format_value(st.variance) + ',' +
             format_value(st.stddev);
    } else {
        s += ",,,";
    }
    return s + '\n';
}

}  // namespace

void write_experiment(const ExperimentConfig& cfg, std::span<const ReplicationResult> reps, const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

    write_file(dir / "manifest.cfg", manifest_text(cfg));

    std::string summary = "rep,seed,n_nodes,n_initial_beacons,n_settled,n_blind,mean_err,mode_err,var_err,std_err,rounds\n";
    std::string baseline_summary = "rep,n_localized,n_unlocalized,mean_err,mode_err,var_err,std_err\n";
    std::vector<double> pooled;
    Heatmap pooled_map(cfg.cell_size, cfg.field.width, cfg.field.height);

    for (const auto& r : reps) {
        const fs::path rep_dir = dir / rep_dir_name(r.rep);
        const auto values = error_values(r.samples);
        const Heatmap map = geographic_error_grid(r.outcome, r.field, cfg.cell_size);
        write_file(rep_dir / "nodes.csv", nodes_csv(r));
        write_file(rep_dir / "cdf.csv", cdf_csv(values, cfg.cdf_bin));
        write_file(rep_dir / "heatmap.csv", heatmap_csv(map));
        if (cfg.baseline) {
            write_file(rep_dir / "baseline.csv", baseline_csv(r));
            baseline_summary += baseline_summary_row(r);
        }
        summary += summary_row(r);
        pooled.insert(pooled.end(), values.begin(), values.end());
        for (const auto& node : r.outcome.nodes)
            if (node.role == Role::Settled && node.est)
                pooled_map.add(node.pos, localization_error(node.pos, *node.est, r.field.radio_range));
    }

    write_file(dir / "summary.csv", summary);
    write_file(dir / "cdf.csv", cdf_csv(pooled, cfg.cdf_bin));
    write_file(dir / "heatmap.csv", heatmap_csv(pooled_map));
    if (cfg.baseline)
        write_file(dir / "baseline_summary.csv", baseline_summary);
    emit_plot_data(dir);
}

std::vector<ReplicationResult> run_experiment(const ExperimentConfig& cfg, unsigned jobs)
{
    auto results = simulate_experiment(cfg, jobs);
    write_experiment(cfg, results, cfg.out);
    return results;
}

SweepResult run_sweep(const ExperimentConfig& cfg, unsigned jobs)
{
    auto result = simulate_sweep(cfg, jobs);
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (ec)
        throw IoError("cannot create output directory " + cfg.out.string() + ": " + ec.message());
    write_file(cfg.out / "manifest.cfg", manifest_text(cfg));

    std::string sweep = "n_nodes,n_reps,mean_err,mode_err,var_err,std_err,mean_blind\n";
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto& row = result.rows[i];
        ExperimentConfig sub = cfg;
        sub.field.node_count = row.n_nodes;
        sub.sweep.clear();
        write_experiment(sub, result.runs[i], cfg.out / sweep_dir_name(row.n_nodes));
        sweep += std::to_string(row.n_nodes) + ',' + std::to_string(row.n_reps) + ',' + opt_value(row.mean_err) +
                 ',' + opt_value(row.mode_err) + ',' + opt_value(row.var_err) + ',' + opt_value(row.std_err) + ',' +
                 format_value(row.mean_blind) + '\n';
    }
    write_file(cfg.out / "sweep.csv", sweep);
    emit_plot_data(cfg.out);
    return result;
}

namespace {

std::string dat_value(const std::string& csv_field)
{
    return csv_field.empty() ? std::string("nan") : csv_field;
}

double mean_of_column(const CsvTable& table, std::size_t col, bool& any)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& row : table.rows) {
        if (row[col].empty())
            continue;
        sum += std::stod(row[col]);
        ++n;
    }
    any = n > 0;
    return n ? sum / static_cast<double>(n) : 0.0;
}

}  // namespace

void emit_plot_data(const fs::path& dir)
{
    const fs::path plot = dir / "plot";

    if (fs::exists(dir / "sweep.csv")) {
        const CsvTable sweep = read_csv(dir / "sweep.csv");
        const auto n = sweep.column("n_nodes"), mean = sweep.column("mean_err"), sd = sweep.column("std_err"),
                   blind = sweep.column("mean_blind");
        std::string stats = "# n_nodes mean_err std_err\n";
        std::string blinds = "# n_nodes mean_blind\n";
        for (const auto& row : sweep.rows) {
            stats += row[n] + ' ' + dat_value(row[mean]) + ' ' + dat_value(row[sd]) + '\n';
            blinds += row[n] + ' ' + dat_value(row[blind]) + '\n';
        }
        write_file(plot / "stats_vs_nodes.dat", stats);
        write_file(plot / "blind_vs_nodes.dat", blinds);
        return;
    }

    const CsvTable summary = read_csv(dir / "summary.csv");
    const auto rep_col = summary.column("rep");

    std::string errors = "# rep node_id err_norm\n";
    for (const auto& row : summary.rows) {
        const std::size_t rep = std::stoul(row[rep_col]);
        const CsvTable nodes = read_csv(dir / rep_dir_name(rep) / "nodes.csv");
        const auto id = nodes.column("node_id"), role = nodes.column("role"), err = nodes.column("err_norm");
        for (const auto& nrow : nodes.rows)
            if (nrow[role] == "settled")
                errors += row[rep_col] + ' ' + nrow[id] + ' ' + nrow[err] + '\n';
    }
    write_file(plot / "errors.dat", errors);

    const CsvTable cdf = read_csv(dir / "cdf.csv");
    std::string cdf_dat = "# err_bin_upper cum_fraction\n";
    for (const auto& row : cdf.rows)
        cdf_dat += row[0] + ' ' + row[1] + '\n';
    write_file(plot / "cdf.dat", cdf_dat);

    const CsvTable heat = read_csv(dir / "heatmap.csv");
    const auto cx = heat.column("cell_x"), cy = heat.column("cell_y"), me = heat.column("mean_err");
    std::string heat_dat = "# cell_x cell_y mean_err\n";
    for (const auto& row : heat.rows)
        heat_dat += row[cx] + ' ' + row[cy] + ' ' + dat_value(row[me]) + '\n';
    write_file(plot / "heatmap.dat", heat_dat);

    // Single-point density series so every experiment directory can feed the
    // same plot scripts as a sweep.
    const auto n_col = summary.column("n_nodes");
    const std::string n_nodes = summary.rows.empty() ? std::string("0") : summary.rows.front()[n_col];
    bool any_mean = false, any_std = false, any_blind = false;
    const double mean = mean_of_column(summary, summary.column("mean_err"), any_mean);
    const double sd = mean_of_column(summary, summary.column("std_err"), any_std);
    const double blind = mean_of_column(summary, summary.column("n_blind"), any_blind);
    write_file(plot / "stats_vs_nodes.dat", "# n_nodes mean_err std_err\n" + n_nodes + ' ' +
                                                (any_mean ? format_value(mean) : "nan") + ' ' +
                                                (any_std ? format_value(sd) : "nan") + '\n');
    write_file(plot / "blind_vs_nodes.dat",
               "# n_nodes mean_blind\n" + n_nodes + ' ' + (any_blind ? format_value(blind) : "nan") + '\n');
}

}  // namespace wsnloc
