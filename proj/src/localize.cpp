#include "wsnloc/localize.hpp"

#include <algorithm>
#include <cmath>

#include "wsnloc/errors.hpp"

namespace wsnloc {

double proximity_factor(int received, int transmitted)
{
    if (transmitted <= 0)
        throw DomainError("proximity factor needs at least one transmitted beacon");
    if (received < 0 || received > transmitted)
        throw DomainError("received beacon count outside [0, transmitted]");
    return 100.0 * static_cast<double>(received) / static_cast<double>(transmitted);
}

ProximityRecord ProximityRecord::from_counts(NodeId beacon, Position advertised, BeaconCounts counts)
{
    return {beacon, advertised, counts.received, counts.transmitted,
            proximity_factor(counts.received, counts.transmitted)};
}

void ThresholdScheme::validate() const
{
    if (lower_bounds.empty())
        throw ConfigError("thresholds", "needs at least one bound");
    if (!(lower_bounds.front() < 100.0))
        throw ConfigError("thresholds", "first bound must be below 100");
    if (lower_bounds.back() != 0.0)
        throw ConfigError("thresholds", "last bound must be 0");
    for (std::size_t i = 1; i < lower_bounds.size(); ++i)
        if (!(lower_bounds[i] < lower_bounds[i - 1]))
            throw ConfigError("thresholds", "bounds must be strictly decreasing");
    if (min_bucket_size < 3)
        throw ConfigError("min-bucket", "must be at least 3");
}

std::vector<ThresholdBucket> bucket_by_thresholds(std::span<const ProximityRecord> records,
                                                  const ThresholdScheme& scheme)
{
    scheme.validate();
    if (records.size() < scheme.min_bucket_size)
        return {};

    std::vector<ThresholdBucket> bands(scheme.lower_bounds.size());
    for (std::size_t k = 0; k < bands.size(); ++k)
        bands[k].lower_bound = scheme.lower_bounds[k];
    for (const auto& rec : records) {
        auto k = static_cast<std::size_t>(
            std::find_if(scheme.lower_bounds.begin(), scheme.lower_bounds.end(),
                         [&](double bound) { return bound <= rec.factor; }) -
            scheme.lower_bounds.begin());
        // Last bound is 0 and factors are non-negative, so k is in range.
        bands[std::min(k, bands.size() - 1)].members.push_back(rec);
    }

    auto move_into = [](ThresholdBucket& from, ThresholdBucket& to) {
        to.members.insert(to.members.end(), from.members.begin(), from.members.end());
        from.members.clear();
    };

    for (std::size_t k = 0; k + 1 < bands.size(); ++k)
        if (bands[k].members.size() < scheme.min_bucket_size)
            move_into(bands[k], bands[k + 1]);

    auto& last = bands.back();
    if (!last.members.empty() && last.members.size() < scheme.min_bucket_size) {
        for (std::size_t k = bands.size() - 1; k-- > 0;) {
            if (!bands[k].members.empty()) {
                move_into(last, bands[k]);
                break;
            }
        }
    }

    std::vector<ThresholdBucket> result;
    for (auto& band : bands)
        if (!band.members.empty())
            result.push_back(std::move(band));
    return result;
}

namespace {

void sort_by_beacon(std::vector<ProximityRecord>& records)
{
    std::stable_sort(records.begin(), records.end(),
                     [](const ProximityRecord& a, const ProximityRecord& b) { return a.beacon_id < b.beacon_id; });
}

Position centroid_of(const std::vector<ProximityRecord>& sorted)
{
    double sx = 0.0, sy = 0.0;
    for (const auto& r : sorted) {
        sx += r.advertised.x;
        sy += r.advertised.y;
    }
    const auto n = static_cast<double>(sorted.size());
    return {sx / n, sy / n};
}

}  // namespace

BucketEstimate bucket_centroid(std::vector<ProximityRecord> members, std::size_t index)
{
    if (members.empty())
        throw DomainError("centroid of an empty bucket");
    sort_by_beacon(members);
    BucketEstimate est;
    est.index = index;
    est.centroid = centroid_of(members);
    double sf = 0.0;
    for (const auto& r : members)
        sf += r.factor;
    est.mean_factor = sf / static_cast<double>(members.size());
    est.members = std::move(members);
    return est;
}

Position fuse_estimates(std::span<const BucketEstimate> buckets)
{
    if (buckets.empty())
        throw DomainError("nothing to fuse");
    if (buckets.size() == 1)
        return buckets.front().centroid;

    double wx = 0.0, wy = 0.0, w = 0.0;
    double lo_x = buckets.front().centroid.x, hi_x = lo_x;
    double lo_y = buckets.front().centroid.y, hi_y = lo_y;
    for (const auto& b : buckets) {
        wx += b.mean_factor * b.centroid.x;
        wy += b.mean_factor * b.centroid.y;
        w += b.mean_factor;
        lo_x = std::min(lo_x, b.centroid.x);
        hi_x = std::max(hi_x, b.centroid.x);
        lo_y = std::min(lo_y, b.centroid.y);
        hi_y = std::max(hi_y, b.centroid.y);
    }
    if (!(w > 0.0))
        throw DomainError("all bucket weights are zero");
    // Rounding may push a convex combination an ulp outside its inputs.
    return {std::clamp(wx / w, lo_x, hi_x), std::clamp(wy / w, lo_y, hi_y)};
}

std::optional<Position> localize_node(std::span<const ProximityRecord> records, const ThresholdScheme& scheme)
{
    if (records.size() < 3)
        return std::nullopt;
    auto buckets = bucket_by_thresholds(records, scheme);
    if (buckets.empty())
        return std::nullopt;
    std::vector<BucketEstimate> estimates;
    estimates.reserve(buckets.size());
    for (std::size_t k = 0; k < buckets.size(); ++k)
        estimates.push_back(bucket_centroid(std::move(buckets[k].members), k));
    return fuse_estimates(estimates);
}

std::optional<Position> bulusu_centroid(std::span<const ProximityRecord> records, double cm_threshold)
{
    std::vector<ProximityRecord> selected;
    for (const auto& r : records)
        if (r.factor > cm_threshold)
            selected.push_back(r);
    if (selected.empty())
        return std::nullopt;
    sort_by_beacon(selected);
    return centroid_of(selected);
}

std::size_t LocalizationOutcome::count(Role role) const noexcept
{
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [role](const Node& n) { return n.role == role; }));
}

LocalizationOutcome run_rounds(std::vector<Node> nodes, const ConnectivityGraph& graph, const ReceptionModel& model,
                               const RoundSettings& settings)
{
    if (settings.max_rounds < 1)
        throw ConfigError("max-rounds", "must be at least 1");
    if (graph.size() != nodes.size())
        throw DomainError("connectivity graph does not match node list");
    settings.sampling.validate();
    settings.scheme.validate();

    LocalizationOutcome outcome;
    for (int round = 1; round <= settings.max_rounds; ++round) {
        const std::uint64_t round_seed = derive_seed(settings.reception_seed, static_cast<std::uint64_t>(round));
        std::vector<std::pair<NodeId, Position>> settling;
        for (const Node& node : nodes) {
            if (node.role != Role::Dumb)
                continue;
            Stream stream(derive_seed(round_seed, static_cast<std::uint64_t>(node.id)));
            const auto table = sample_table(node.id, nodes, graph, model, settings.sampling, stream,
                                            [](const Node& n) { return n.is_beacon(); });
            if (auto est = localize_node(table, settings.scheme))
                settling.emplace_back(node.id, *est);
        }
        for (const auto& [id, est] : settling) {
            nodes[id].role = Role::Settled;
            nodes[id].est = est;
            nodes[id].settled_round = round;
        }
        outcome.rounds_executed = round;
        outcome.settled_per_round.push_back(settling.size());
        if (settling.empty())
            break;
    }

    for (auto& node : nodes)
        if (node.role == Role::Dumb)
            node.role = Role::Blind;
    outcome.nodes = std::move(nodes);
    return outcome;
}

std::vector<std::optional<Position>> run_bulusu_baseline(std::span<const Node> nodes, const ConnectivityGraph& graph,
                                                         const ReceptionModel& model, const SamplingParams& sampling,
                                                         double cm_threshold, std::uint64_t seed)
{
    std::vector<std::optional<Position>> estimates(nodes.size());
    for (const Node& node : nodes) {
        if (node.role == Role::InitialBeacon)
            continue;
        Stream stream(derive_seed(seed, static_cast<std::uint64_t>(node.id)));
        const auto table = sample_table(node.id, nodes, graph, model, sampling, stream,
                                        [](const Node& n) { return n.role == Role::InitialBeacon; });
        estimates[node.id] = bulusu_centroid(table, cm_threshold);
    }
    return estimates;
}

}  // namespace wsnloc
