#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wsnloc/field.hpp"
#include "wsnloc/radio.hpp"

namespace wsnloc {

// F_B = 100 * N_b / N_B. Throws DomainError when N_B = 0 or N_b is outside
// [0, N_B].
double proximity_factor(int received, int transmitted);

// One row of a dumb node's beacon table.
struct ProximityRecord {
    NodeId beacon_id = 0;
    Position advertised;
    int received = 0;
    int transmitted = 0;
    double factor = 0.0;

    static ProximityRecord from_counts(NodeId beacon, Position advertised, BeaconCounts counts);
};

struct ThresholdScheme {
    // Strictly decreasing, first below 100, last exactly 0.
    std::vector<double> lower_bounds{90.0, 70.0, 50.0, 30.0, 0.0};
    std::size_t min_bucket_size = 3;

    void validate() const;
};

struct ThresholdBucket {
    double lower_bound = 0.0;
    std::vector<ProximityRecord> members;
};

// Places each record in the band with the largest lower bound <= its factor,
// then repairs undersized bands: scanning from the highest band down, a band
// with fewer than min_bucket_size members is folded into the next lower band;
// if the lowest surviving band is still short it joins the nearest nonempty
// higher band. Result is ordered highest band first and is empty when there
// are fewer than min_bucket_size records in total. Members keep input order.
std::vector<ThresholdBucket> bucket_by_thresholds(std::span<const ProximityRecord> records,
                                                  const ThresholdScheme& scheme);

struct BucketEstimate {
    std::size_t index = 0;
    std::vector<ProximityRecord> members;
    Position centroid;
    double mean_factor = 0.0;
};

// Unweighted centroid of the members' advertised positions and mean F_B.
// Sums run in ascending beacon id.
BucketEstimate bucket_centroid(std::vector<ProximityRecord> members, std::size_t index = 0);

// Weighted mean of bucket centroids with mean factors as weights. A single
// bucket returns its centroid untouched.
Position fuse_estimates(std::span<const BucketEstimate> buckets);

// Full per-node estimator: nullopt below three records, otherwise
// bucket -> per-bucket centroid -> fuse. Records must all have N_b >= 1.
std::optional<Position> localize_node(std::span<const ProximityRecord> records, const ThresholdScheme& scheme);

// Connectivity-metric centroid: mean advertised position of every record
// with factor strictly above cm_threshold.
std::optional<Position> bulusu_centroid(std::span<const ProximityRecord> records, double cm_threshold);

struct LocalizationOutcome {
    std::vector<Node> nodes;
    int rounds_executed = 0;
    std::vector<std::size_t> settled_per_round;

    std::size_t count(Role role) const noexcept;
};

struct RoundSettings {
    SamplingParams sampling;
    ThresholdScheme scheme;
    int max_rounds = 100;
    std::uint64_t reception_seed = 0;
};

// Samples one window against every beacon neighbor of `listener` for which
// `is_source` holds, in ascending neighbor id, and keeps the beacons heard at
// least once. The channel sees true positions; records carry advertised ones.
template <class Pred>
std::vector<ProximityRecord> sample_table(NodeId listener, std::span<const Node> nodes, const ConnectivityGraph& graph,
                                          const ReceptionModel& model, const SamplingParams& sampling,
                                          Stream& stream, Pred is_source)
{
    std::vector<ProximityRecord> table;
    for (const Neighbor& nb : graph.neighbors(listener)) {
        const Node& beacon = nodes[nb.id];
        if (!is_source(beacon))
            continue;
        const BeaconCounts counts = sample_beacon_counts(model, nb.distance, sampling, stream);
        if (counts.received > 0)
            table.push_back(ProximityRecord::from_counts(beacon.id, beacon.advertised(), counts));
    }
    return table;
}

// Iterative localization with settled-node promotion. Rounds are synchronous:
// every still-dumb node samples a fresh window against the beacon set frozen
// at the start of the round (reception substream derived from
// (reception_seed, round, node id)), and all nodes that obtain an estimate
// settle together at the end of the round. Stops after the first round that
// settles nobody, or after max_rounds; remaining dumb nodes become Blind.
// Node ids must equal their index in `nodes`.
LocalizationOutcome run_rounds(std::vector<Node> nodes, const ConnectivityGraph& graph, const ReceptionModel& model,
                               const RoundSettings& settings);

// Single-shot baseline against the initial beacons only. Entry i is the
// estimate for node i, always nullopt for initial beacons.
std::vector<std::optional<Position>> run_bulusu_baseline(std::span<const Node> nodes, const ConnectivityGraph& graph,
                                                         const ReceptionModel& model, const SamplingParams& sampling,
                                                         double cm_threshold, std::uint64_t seed);

}  // namespace wsnloc
