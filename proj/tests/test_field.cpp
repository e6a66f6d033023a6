#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "wsnloc/errors.hpp"
#include "wsnloc/field.hpp"
#include "wsnloc/rng.hpp"

using namespace wsnloc;

namespace {

std::vector<Node> at(std::initializer_list<Position> points)
{
    std::vector<Node> nodes;
    for (const auto& p : points)
        nodes.push_back(Node{nodes.size(), p});
    return nodes;
}

// All-pairs check, independent of the bucket grid.
std::vector<std::vector<NodeId>> brute_adjacency(const std::vector<Node>& nodes, double r)
{
    std::vector<std::vector<NodeId>> adj(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j)
            if (i != j && std::hypot(nodes[i].pos.x - nodes[j].pos.x, nodes[i].pos.y - nodes[j].pos.y) <= r)
                adj[i].push_back(j);
    return adj;
}

std::vector<std::vector<NodeId>> ids_of(const ConnectivityGraph& g)
{
    std::vector<std::vector<NodeId>> adj(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (const auto& nb : g.neighbors(i))
            adj[i].push_back(nb.id);
    return adj;
}

}  // namespace

TEST_CASE("distance")
{
    CHECK(distance({0, 0}, {3, 4}) == 5.0);
    CHECK(distance({7, 7}, {7, 7}) == 0.0);
    CHECK(distance({1, 1}, {4, 5}) == 5.0);
    CHECK(distance({4, 5}, {1, 1}) == distance({1, 1}, {4, 5}));
}

TEST_CASE("deploy_uniform covers the field and is reproducible")
{
    FieldConfig cfg;
    cfg.seed = 99;
    const auto a = deploy_uniform(cfg);
    REQUIRE(a.size() == 400);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == i);
        CHECK(a[i].role == Role::Dumb);
        CHECK(a[i].pos.x >= 0.0);
        CHECK(a[i].pos.x <= 100.0);
        CHECK(a[i].pos.y >= 0.0);
        CHECK(a[i].pos.y <= 100.0);
    }
    const auto b = deploy_uniform(cfg);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].pos == b[i].pos);

    cfg.seed = 100;
    const auto c = deploy_uniform(cfg);
    CHECK_FALSE(c[0].pos == a[0].pos);
}

TEST_CASE("deploy_uniform golden single node")
{
    // Frozen from tests/oracles/derive_goldens.py, which recomputes the draw
    // with its own MT19937-64 and seed derivation.
    FieldConfig cfg;
    cfg.width = 10;
    cfg.height = 10;
    cfg.node_count = 1;
    cfg.seed = 20241016;
    const auto nodes = deploy_uniform(cfg);
    REQUIRE(nodes.size() == 1);
    CHECK(nodes[0].pos.x == 1.0909521683070045);
    CHECK(nodes[0].pos.y == 2.0609411580381742);
}

TEST_CASE("deploy_uniform rejects bad geometry")
{
    FieldConfig cfg;
    cfg.width = 0;
    CHECK_THROWS_AS(deploy_uniform(cfg), ConfigError);
    cfg = FieldConfig{};
    cfg.height = -5;
    CHECK_THROWS_AS(deploy_uniform(cfg), ConfigError);
    cfg = FieldConfig{};
    cfg.node_count = 0;
    try {
        deploy_uniform(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "nodes");
    }
}

TEST_CASE("build_connectivity edge predicate is d <= r")
{
    CHECK(build_connectivity(at({{0, 0}, {0, 10}}), 10).edge_count() == 1);
    CHECK(build_connectivity(at({{0, 0}, {0, 10.01}}), 10).edge_count() == 0);
    CHECK(build_connectivity(at({{0, 0}, {50, 0}, {0, 50}}), 10).edge_count() == 0);

    const auto g = build_connectivity(at({{0, 0}, {0, 10}}), 10);
    REQUIRE(g.neighbors(0).size() == 1);
    CHECK(g.neighbors(0)[0].distance == 10.0);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 0));
    CHECK_THROWS_AS(build_connectivity(at({{0, 0}}), 0.0), ConfigError);
}

TEST_CASE("build_connectivity matches all-pairs, is symmetric, loop-free")
{
    Stream rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng.below(500);
        const double side = 5.0 + 120.0 * rng.uniform();
        const double r = 1.0 + 15.0 * rng.uniform();
        std::vector<Node> nodes(n);
        for (std::size_t i = 0; i < n; ++i) {
            nodes[i].id = i;
            // Snap some points to a lattice so boundary distances d == r occur.
            if (rng.below(4) == 0)
                nodes[i].pos = {std::floor(rng.uniform() * side / r) * r, std::floor(rng.uniform() * side / r) * r};
            else
                nodes[i].pos = {rng.uniform() * side, rng.uniform() * side};
        }
        const auto g = build_connectivity(nodes, r);
        CHECK(ids_of(g) == brute_adjacency(nodes, r));
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& nb : g.neighbors(i)) {
                CHECK(nb.id != i);
                CHECK(g.adjacent(nb.id, i));
                CHECK(nb.distance <= r);
            }
        }
    }
}

TEST_CASE("connectivity is translation invariant")
{
    Stream rng(11);
    std::vector<Node> nodes(200);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        nodes[i] = Node{i, {std::round(rng.uniform() * 4000) / 64.0, std::round(rng.uniform() * 4000) / 64.0}};
    auto shifted = nodes;
    for (auto& n : shifted)
        n.pos = {n.pos.x + 13.0, n.pos.y - 7.0};
    // Dyadic coordinates keep the differences exact, so weights match bit for bit.
    CHECK(build_connectivity(nodes, 10.0) == build_connectivity(shifted, 10.0));
}

TEST_CASE("assign_initial_beacons Random")
{
    FieldConfig cfg;
    cfg.seed = 5;
    const auto nodes = assign_initial_beacons(deploy_uniform(cfg), cfg, BeaconStrategy::Random);
    const auto beacons = std::count_if(nodes.begin(), nodes.end(),
                                       [](const Node& n) { return n.role == Role::InitialBeacon; });
    CHECK(beacons == 80);

    const auto again = assign_initial_beacons(deploy_uniform(cfg), cfg, BeaconStrategy::Random);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        CHECK(nodes[i].role == again[i].role);
}

TEST_CASE("assign_initial_beacons rejects fewer than three beacons")
{
    FieldConfig cfg;
    cfg.beacon_fraction = 0.004;
    auto nodes = deploy_uniform(cfg);
    try {
        assign_initial_beacons(nodes, cfg, BeaconStrategy::Random);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "beacon-fraction");
    }
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("assign_initial_beacons GridJitter on corners")
{
    FieldConfig cfg;
    cfg.node_count = 4;
    cfg.beacon_fraction = 0.75;
    const auto nodes = assign_initial_beacons(at({{0, 0}, {100, 0}, {0, 100}, {100, 100}}), cfg,
                                              BeaconStrategy::GridJitter);
    CHECK(nodes[0].role == Role::InitialBeacon);
    CHECK(nodes[1].role == Role::InitialBeacon);
    CHECK(nodes[2].role == Role::InitialBeacon);
    CHECK(nodes[3].role == Role::Dumb);
}

TEST_CASE("GridJitter spreads beacons over the field")
{
    FieldConfig cfg;
    cfg.seed = 3;
    const auto nodes = assign_initial_beacons(deploy_uniform(cfg), cfg, BeaconStrategy::GridJitter);
    std::size_t count = 0;
    int quadrant[4] = {0, 0, 0, 0};
    for (const auto& n : nodes) {
        if (n.role != Role::InitialBeacon)
            continue;
        ++count;
        ++quadrant[(n.pos.x >= 50 ? 1 : 0) + (n.pos.y >= 50 ? 2 : 0)];
    }
    CHECK(count == 80);
    for (int q : quadrant)
        CHECK(q >= 15);
}

TEST_CASE("substream derivation")
{
    CHECK(derive_seed(1, "deploy") == derive_seed(1, "deploy"));
    CHECK(derive_seed(1, "deploy") != derive_seed(1, "beacons"));
    CHECK(derive_seed(1, std::uint64_t{0}) != derive_seed(1, std::uint64_t{1}));
    CHECK(derive_seed(1, std::uint64_t{0}) != derive_seed(2, std::uint64_t{0}));

    Stream s(42);
    for (int i = 0; i < 1000; ++i) {
        const double u = s.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(s.below(7) < 7);
    }
}
