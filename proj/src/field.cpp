#include "wsnloc/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wsnloc/errors.hpp"
#include "wsnloc/rng.hpp"

namespace wsnloc {

double distance(Position a, Position b) noexcept
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

void FieldConfig::validate_geometry() const
{
    if (!(width > 0.0) || !std::isfinite(width))
        throw ConfigError("field-width", "must be positive");
    if (!(height > 0.0) || !std::isfinite(height))
        throw ConfigError("field-height", "must be positive");
    if (node_count == 0)
        throw ConfigError("nodes", "must be positive");
    if (!(radio_range > 0.0) || !std::isfinite(radio_range))
        throw ConfigError("radio-range", "must be positive");
}

void FieldConfig::validate() const
{
    validate_geometry();
    if (!(beacon_fraction > 0.0 && beacon_fraction < 1.0))
        throw ConfigError("beacon-fraction", "must lie in (0, 1)");
    if (initial_beacon_count(node_count, beacon_fraction) < 3)
        throw ConfigError("beacon-fraction", "yields fewer than 3 initial beacons");
}

std::string_view to_string(Role role) noexcept
{
    switch (role) {
    case Role::InitialBeacon: return "initial_beacon";
    case Role::Dumb: return "dumb";
    case Role::Settled: return "settled";
    case Role::Blind: return "blind";
    }
    return "unknown";
}

std::string_view to_string(BeaconStrategy strategy) noexcept
{
    return strategy == BeaconStrategy::Random ? "random" : "grid";
}

ConnectivityGraph::ConnectivityGraph(std::vector<std::vector<Neighbor>> adjacency)
    : adjacency_(std::move(adjacency))
{
    for (auto& list : adjacency_)
        std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
}

bool ConnectivityGraph::adjacent(NodeId a, NodeId b) const
{
    const auto& list = adjacency_.at(a);
    return std::binary_search(list.begin(), list.end(), Neighbor{b, 0.0},
                              [](const Neighbor& l, const Neighbor& r) { return l.id < r.id; });
}

std::size_t ConnectivityGraph::edge_count() const noexcept
{
    std::size_t degree_sum = 0;
    for (const auto& list : adjacency_)
        degree_sum += list.size();
    return degree_sum / 2;
}

bool operator==(const ConnectivityGraph& a, const ConnectivityGraph& b)
{
    if (a.adjacency_.size() != b.adjacency_.size())
        return false;
    for (std::size_t i = 0; i < a.adjacency_.size(); ++i) {
        const auto& la = a.adjacency_[i];
        const auto& lb = b.adjacency_[i];
        if (la.size() != lb.size())
            return false;
        for (std::size_t k = 0; k < la.size(); ++k)
            if (la[k].id != lb[k].id || la[k].distance != lb[k].distance)
                return false;
    }
    return true;
}

std::vector<Node> deploy_uniform(const FieldConfig& cfg)
{
    cfg.validate_geometry();
    Stream stream(derive_seed(cfg.seed, "deploy"));
    std::vector<Node> nodes(cfg.node_count);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        nodes[i].id = i;
        nodes[i].pos.x = stream.uniform() * cfg.width;
        nodes[i].pos.y = stream.uniform() * cfg.height;
    }
    return nodes;
}

ConnectivityGraph build_connectivity(std::span<const Node> nodes, double r)
{
    if (!(r > 0.0))
        throw ConfigError("radio-range", "must be positive");

    std::vector<std::vector<Neighbor>> adjacency(nodes.size());
    if (nodes.empty())
        return ConnectivityGraph(std::move(adjacency));

    double min_x = nodes[0].pos.x, min_y = nodes[0].pos.y;
    for (const auto& n : nodes) {
        min_x = std::min(min_x, n.pos.x);
        min_y = std::min(min_y, n.pos.y);
    }

    // Bucket nodes into r-sized cells; any edge joins nodes in the same or
    // adjacent cells.
    auto cell_of = [&](const Position& p) {
        return std::pair<long long, long long>{static_cast<long long>(std::floor((p.x - min_x) / r)),
                                               static_cast<long long>(std::floor((p.y - min_y) / r))};
    };
    std::vector<std::pair<std::pair<long long, long long>, NodeId>> cells;
    cells.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        cells.push_back({cell_of(nodes[i].pos), i});
    std::sort(cells.begin(), cells.end());

    auto cell_range = [&](std::pair<long long, long long> key) {
        auto lo = std::lower_bound(cells.begin(), cells.end(), std::pair{key, NodeId{0}});
        auto hi = std::lower_bound(cells.begin(), cells.end(),
                                   std::pair{key, std::numeric_limits<NodeId>::max()});
        return std::pair{lo, hi};
    };

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto [cx, cy] = cell_of(nodes[i].pos);
        for (long long dx = -1; dx <= 1; ++dx) {
            for (long long dy = -1; dy <= 1; ++dy) {
                auto [lo, hi] = cell_range({cx + dx, cy + dy});
                for (auto it = lo; it != hi; ++it) {
                    const NodeId j = it->second;
                    if (j == i)
                        continue;
                    const double d = distance(nodes[i].pos, nodes[j].pos);
                    if (d <= r)
                        adjacency[i].push_back({j, d});
                }
            }
        }
    }
    return ConnectivityGraph(std::move(adjacency));
}

std::size_t initial_beacon_count(std::size_t n, double fraction) noexcept
{
    return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
}

std::vector<Node> assign_initial_beacons(std::vector<Node> nodes, const FieldConfig& cfg,
                                         BeaconStrategy strategy)
{
    const std::size_t n = nodes.size();
    const std::size_t count = initial_beacon_count(n, cfg.beacon_fraction);
    if (count < 3)
        throw ConfigError("beacon-fraction", "yields fewer than 3 initial beacons");
    if (count > n)
        throw ConfigError("beacon-fraction", "yields more beacons than nodes");

    if (strategy == BeaconStrategy::Random) {
        Stream stream(derive_seed(cfg.seed, "beacons"));
        std::vector<NodeId> order(n);
        std::iota(order.begin(), order.end(), NodeId{0});
        for (std::size_t k = 0; k < count; ++k) {
            const std::size_t j = k + static_cast<std::size_t>(stream.below(n - k));
            std::swap(order[k], order[j]);
        }
        for (std::size_t k = 0; k < count; ++k)
            nodes[order[k]].role = Role::InitialBeacon;
        return nodes;
    }

    const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
    const double cell_w = cfg.width / static_cast<double>(side);
    const double cell_h = cfg.height / static_cast<double>(side);
    std::size_t flagged = 0;
    for (std::size_t row = 0; row < side && flagged < count; ++row) {
        for (std::size_t col = 0; col < side && flagged < count; ++col) {
            const Position center{(static_cast<double>(col) + 0.5) * cell_w,
                                  (static_cast<double>(row) + 0.5) * cell_h};
            std::optional<NodeId> best;
            double best_d = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (nodes[i].role == Role::InitialBeacon)
                    continue;
                const double d = distance(nodes[i].pos, center);
                if (!best || d < best_d) {
                    best = i;
                    best_d = d;
                }
            }
            nodes[*best].role = Role::InitialBeacon;
            ++flagged;
        }
    }
    return nodes;
}

}  // namespace wsnloc
