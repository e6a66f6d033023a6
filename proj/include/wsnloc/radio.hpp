#pragma once

#include <string_view>
#include <variant>

#include "wsnloc/rng.hpp"

namespace wsnloc {

// Reception is certain at or below range.
struct IdealDisc {};

// Certain up to inner_fraction * r, then falls linearly to zero at r.
struct LinearRamp {
    double inner_fraction = 0.1;
};

// Log-distance path loss with log-normal shadowing, normalized so the mean
// received power sits exactly at the receiver threshold at distance r:
//
//   margin(d) = 10 * exponent * log10(r / d)      [dB]
//   p(d)      = Phi(margin(d) / sigma_db)          for 0 < d <= r
//
// with p(0) = 1 and p(d) = 0 beyond r. Each time slot sees a fresh fade, so a
// slot succeeds with probability p(d) independently of the others.
struct LogNormalShadowing {
    double sigma_db = 4.0;
    double pathloss_exponent = 3.0;
};

class ReceptionModel {
public:
    using Law = std::variant<IdealDisc, LinearRamp, LogNormalShadowing>;

    ReceptionModel(Law law, double radio_range);

    const Law& law() const noexcept { return law_; }
    double radio_range() const noexcept { return range_; }
    std::string_view name() const noexcept;

    double probability(double d) const;

private:
    Law law_;
    double range_;
};

double reception_probability(const ReceptionModel& model, double d);

// 100 * reception_probability: the proximity factor a beacon at distance d
// yields in expectation.
double expected_proximity(const ReceptionModel& model, double d);

struct SamplingParams {
    double beacon_period = 1.0;  // T, seconds
    double sample_time = 100.0;  // T_s, seconds

    void validate() const;

    // N_B = floor(T_s / T).
    int transmitted() const;
};

struct BeaconCounts {
    int received = 0;     // N_b
    int transmitted = 0;  // N_B

    friend bool operator==(const BeaconCounts&, const BeaconCounts&) = default;
};

// One sampling window: N_B slots in time order, each consuming exactly one
// uniform draw from the stream and succeeding iff the draw is below p(d).
BeaconCounts sample_beacon_counts(const ReceptionModel& model, double d, const SamplingParams& sampling,
                                  Stream& stream);

}  // namespace wsnloc
