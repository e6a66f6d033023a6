#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wsnloc/field.hpp"
#include "wsnloc/localize.hpp"

namespace wsnloc {

// Euclidean distance between true and estimated position over the radio range.
double localization_error(Position actual, Position estimated, double radio_range);

struct ErrorSample {
    NodeId node_id = 0;
    double err_norm = 0.0;
};

// One sample per Settled node, ascending id.
std::vector<ErrorSample> error_samples(const LocalizationOutcome& outcome, double radio_range);
std::vector<double> error_values(std::span<const ErrorSample> samples);

struct ErrorStats {
    std::size_t count = 0;
    double mean = 0.0;
    double mode_1dp = 0.0;  // most frequent value after half-up rounding to 0.1
    double variance = 0.0;  // population variance
    double stddev = 0.0;
};

// Throws DomainError on an empty list.
ErrorStats error_stats(std::span<const double> samples);

// Most frequent one-decimal bin, ties to the smaller value.
double mode_one_decimal(std::span<const double> samples);

struct CdfPoint {
    double upper_edge = 0.0;
    double cumulative_fraction = 0.0;
};

// Fraction of samples <= k * bin_width for k = 1..K, where K is the first
// multiple that covers the largest sample. The last point is exactly 1.
std::vector<CdfPoint> error_cdf(std::span<const double> samples, double bin_width);

struct HeatmapCell {
    std::size_t count = 0;
    double sum = 0.0;

    // nullopt marks an empty cell.
    std::optional<double> mean() const;
};

class Heatmap {
public:
    Heatmap(double cell_size, double width, double height);

    double cell_size() const noexcept { return cell_size_; }
    std::size_t columns() const noexcept { return columns_; }
    std::size_t rows() const noexcept { return rows_; }

    // Cell indices for a point. A coordinate on a cell boundary belongs to
    // the lower-index cell; points past the far edges fold into the last cell.
    std::pair<std::size_t, std::size_t> locate(Position p) const noexcept;

    void add(Position p, double value);
    const HeatmapCell& at(std::size_t col, std::size_t row) const { return cells_.at(row * columns_ + col); }
    std::size_t total_count() const noexcept;

private:
    double cell_size_;
    std::size_t columns_;
    std::size_t rows_;
    std::vector<HeatmapCell> cells_;
};

// Each settled node's normalized error binned at its true position. The last
// row and column may be partial when cell_size does not divide the field.
Heatmap geographic_error_grid(const LocalizationOutcome& outcome, const FieldConfig& field, double cell_size);

std::size_t count_blind(const LocalizationOutcome& outcome) noexcept;

struct EdgeSplit {
    std::size_t edge_count = 0;
    double edge_sum = 0.0;
    std::size_t interior_count = 0;
    double interior_sum = 0.0;

    void merge(const EdgeSplit& other) noexcept;
    double edge_mean() const noexcept;
    double interior_mean() const noexcept;
};

// Splits settled-node errors by whether the true position lies within
// `margin` of any field edge.
EdgeSplit edge_vs_interior(const LocalizationOutcome& outcome, const FieldConfig& field, double margin);

}  // namespace wsnloc
