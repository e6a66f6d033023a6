#include "wsnloc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "wsnloc/errors.hpp"

namespace wsnloc {

double localization_error(Position actual, Position estimated, double radio_range)
{
    if (!(radio_range > 0.0))
        throw DomainError("radio range must be positive");
    return distance(actual, estimated) / radio_range;
}

std::vector<ErrorSample> error_samples(const LocalizationOutcome& outcome, double radio_range)
{
    std::vector<ErrorSample> samples;
    for (const auto& node : outcome.nodes)
        if (node.role == Role::Settled && node.est)
            samples.push_back({node.id, localization_error(node.pos, *node.est, radio_range)});
    return samples;
}

std::vector<double> error_values(std::span<const ErrorSample> samples)
{
    std::vector<double> values;
    values.reserve(samples.size());
    for (const auto& s : samples)
        values.push_back(s.err_norm);
    return values;
}

double mode_one_decimal(std::span<const double> samples)
{
    if (samples.empty())
        throw DomainError("mode of an empty sample");
    std::map<long long, std::size_t> tally;
    for (double v : samples)
        ++tally[static_cast<long long>(std::floor(v * 10.0 + 0.5))];
    auto best = tally.begin();
    for (auto it = tally.begin(); it != tally.end(); ++it)
        if (it->second > best->second)
            best = it;
    return static_cast<double>(best->first) / 10.0;
}

ErrorStats error_stats(std::span<const double> samples)
{
    if (samples.empty())
        throw DomainError("error statistics of an empty sample");
    ErrorStats stats;
    stats.count = samples.size();
    const auto n = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double v : samples)
        sum += v;
    stats.mean = sum / n;
    double sq = 0.0;
    for (double v : samples)
        sq += (v - stats.mean) * (v - stats.mean);
    stats.variance = sq / n;
    stats.stddev = std::sqrt(stats.variance);
    stats.mode_1dp = mode_one_decimal(samples);
    return stats;
}

std::vector<CdfPoint> error_cdf(std::span<const double> samples, double bin_width)
{
    if (!(bin_width > 0.0))
        throw DomainError("CDF bin width must be positive");
    if (samples.empty())
        throw DomainError("CDF of an empty sample");

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double top = sorted.back();

    auto bins = static_cast<std::size_t>(std::max(1.0, std::ceil(top / bin_width)));
    while (static_cast<double>(bins) * bin_width < top)
        ++bins;

    std::vector<CdfPoint> cdf;
    cdf.reserve(bins);
    const auto n = static_cast<double>(sorted.size());
    for (std::size_t k = 1; k <= bins; ++k) {
        const double edge = static_cast<double>(k) * bin_width;
        const auto below = std::upper_bound(sorted.begin(), sorted.end(), edge) - sorted.begin();
        cdf.push_back({edge, k == bins ? 1.0 : static_cast<double>(below) / n});
    }
    return cdf;
}

std::optional<double> HeatmapCell::mean() const
{
    if (count == 0)
        return std::nullopt;
    return sum / static_cast<double>(count);
}

Heatmap::Heatmap(double cell_size, double width, double height)
    : cell_size_(cell_size)
{
    if (!(cell_size > 0.0))
        throw ConfigError("cell-size", "must be positive");
    columns_ = static_cast<std::size_t>(std::max(1.0, std::ceil(width / cell_size)));
    rows_ = static_cast<std::size_t>(std::max(1.0, std::ceil(height / cell_size)));
    cells_.resize(columns_ * rows_);
}

std::pair<std::size_t, std::size_t> Heatmap::locate(Position p) const noexcept
{
    auto index = [&](double v, std::size_t limit) {
        const double k = std::ceil(v / cell_size_) - 1.0;
        if (!(k > 0.0))
            return std::size_t{0};
        return std::min(static_cast<std::size_t>(k), limit - 1);
    };
    return {index(p.x, columns_), index(p.y, rows_)};
}

void Heatmap::add(Position p, double value)
{
    const auto [col, row] = locate(p);
    auto& cell = cells_[row * columns_ + col];
    ++cell.count;
    cell.sum += value;
}

std::size_t Heatmap::total_count() const noexcept
{
    std::size_t total = 0;
    for (const auto& c : cells_)
        total += c.count;
    return total;
}

Heatmap geographic_error_grid(const LocalizationOutcome& outcome, const FieldConfig& field, double cell_size)
{
    Heatmap map(cell_size, field.width, field.height);
    for (const auto& node : outcome.nodes)
        if (node.role == Role::Settled && node.est)
            map.add(node.pos, localization_error(node.pos, *node.est, field.radio_range));
    return map;
}

std::size_t count_blind(const LocalizationOutcome& outcome) noexcept
{
    return outcome.count(Role::Blind);
}

void EdgeSplit::merge(const EdgeSplit& other) noexcept
{
    edge_count += other.edge_count;
    edge_sum += other.edge_sum;
    interior_count += other.interior_count;
    interior_sum += other.interior_sum;
}

double EdgeSplit::edge_mean() const noexcept
{
    return edge_count ? edge_sum / static_cast<double>(edge_count) : std::numeric_limits<double>::quiet_NaN();
}

double EdgeSplit::interior_mean() const noexcept
{
    return interior_count ? interior_sum / static_cast<double>(interior_count)
                          : std::numeric_limits<double>::quiet_NaN();
}

EdgeSplit edge_vs_interior(const LocalizationOutcome& outcome, const FieldConfig& field, double margin)
{
    EdgeSplit split;
    for (const auto& node : outcome.nodes) {
        if (node.role != Role::Settled || !node.est)
            continue;
        const double e = localization_error(node.pos, *node.est, field.radio_range);
        const bool near_edge = node.pos.x <= margin || node.pos.y <= margin || field.width - node.pos.x <= margin ||
                               field.height - node.pos.y <= margin;
        if (near_edge) {
            ++split.edge_count;
            split.edge_sum += e;
        } else {
            ++split.interior_count;
            split.interior_sum += e;
        }
    }
    return split;
}

}  // namespace wsnloc
