#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace wsnloc {

// A point in the sensor field, in meters.
struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

double distance(Position a, Position b) noexcept;

struct FieldConfig {
    double width = 100.0;
    double height = 100.0;
    std::size_t node_count = 400;
    double radio_range = 10.0;
    double beacon_fraction = 0.2;
    std::uint64_t seed = 1;

    // Dimensions, count and range only. Throws ConfigError naming the key.
    void validate_geometry() const;
    // Geometry plus the beacon-fraction invariants.
    void validate() const;
};

enum class Role { InitialBeacon, Dumb, Settled, Blind };

std::string_view to_string(Role role) noexcept;

using NodeId = std::size_t;

struct Node {
    NodeId id = 0;
    Position pos;
    Role role = Role::Dumb;
    std::optional<Position> est;
    std::optional<int> settled_round;

    bool is_beacon() const noexcept { return role == Role::InitialBeacon || role == Role::Settled; }

    // The position a beacon puts in its messages: ground truth for initial
    // beacons, the estimate for settled nodes.
    Position advertised() const noexcept { return role == Role::Settled && est ? *est : pos; }
};

struct Neighbor {
    NodeId id;
    double distance;  // edge weight w(e), always <= radio range
};

// Undirected unit-disc graph over node ids. Adjacency lists are sorted by id.
class ConnectivityGraph {
public:
    ConnectivityGraph() = default;
    explicit ConnectivityGraph(std::vector<std::vector<Neighbor>> adjacency);

    std::size_t size() const noexcept { return adjacency_.size(); }
    std::span<const Neighbor> neighbors(NodeId id) const { return adjacency_.at(id); }
    bool adjacent(NodeId a, NodeId b) const;
    std::size_t edge_count() const noexcept;

    friend bool operator==(const ConnectivityGraph& a, const ConnectivityGraph& b);

private:
    std::vector<std::vector<Neighbor>> adjacency_;
};

// node_count nodes with coordinates uniform over [0,width] x [0,height],
// drawn x then y per node from the "deploy" substream of cfg.seed. All roles
// start as Dumb.
std::vector<Node> deploy_uniform(const FieldConfig& cfg);

// Edge (i, j) iff i != j and distance <= r. Uses a bucket grid of cell size r;
// the result is identical to the all-pairs check.
ConnectivityGraph build_connectivity(std::span<const Node> nodes, double r);

enum class BeaconStrategy { Random, GridJitter };

std::string_view to_string(BeaconStrategy strategy) noexcept;

// Number of initial beacons for a fraction of n nodes: round(fraction * n).
std::size_t initial_beacon_count(std::size_t n, double fraction) noexcept;

// Flags round(cfg.beacon_fraction * nodes.size()) nodes as InitialBeacon.
// Random draws without replacement from the "beacons" substream of cfg.seed.
// GridJitter walks the cells of a ceil(sqrt(B)) square grid over the field in
// row-major order and takes the unflagged node nearest each cell center
// (ties to the lower id) until B nodes are flagged.
// Throws ConfigError if fewer than 3 beacons would result.
std::vector<Node> assign_initial_beacons(std::vector<Node> nodes, const FieldConfig& cfg,
                                         BeaconStrategy strategy);

}  // namespace wsnloc
