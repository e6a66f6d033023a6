#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wsnloc/errors.hpp"
#include "wsnloc/metrics.hpp"
#include "wsnloc/rng.hpp"

using namespace wsnloc;

namespace {

Node settled(NodeId id, Position truth, Position est)
{
    Node n{id, truth, Role::Settled, est, 1};
    return n;
}

}  // namespace

TEST_CASE("localization_error")
{
    CHECK(localization_error({3, 4}, {0, 0}, 10) == 0.5);
    CHECK(localization_error({2, 2}, {2, 2}, 10) == 0.0);
    CHECK(localization_error({0, 0}, {0, 20}, 10) == 2.0);
    CHECK_THROWS_AS(localization_error({0, 0}, {1, 1}, 0), DomainError);
    CHECK_THROWS_AS(localization_error({0, 0}, {1, 1}, -2), DomainError);
}

TEST_CASE("error_stats")
{
    const std::vector<double> same{0.5, 0.5, 0.5};
    auto s = error_stats(same);
    CHECK(s.mean == 0.5);
    CHECK(s.mode_1dp == 0.5);
    CHECK(s.variance == 0.0);
    CHECK(s.stddev == 0.0);

    CHECK(error_stats(std::vector{0.11, 0.14, 0.32}).mode_1dp == 0.1);
    // Tie between 0.1 and 0.3 goes to the smaller value.
    CHECK(error_stats(std::vector{0.12, 0.31}).mode_1dp == 0.1);
    // Half-up rounding.
    CHECK(mode_one_decimal(std::vector{0.25, 0.25, 0.1}) == 0.3);

    s = error_stats(std::vector{1.0, 2.0, 3.0, 4.0});
    CHECK(s.mean == 2.5);
    CHECK(s.variance == 1.25);  // population variance

    CHECK_THROWS_AS(error_stats(std::vector<double>{}), DomainError);
}

TEST_CASE("stddev is the square root of the population variance")
{
    Stream rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(1 + rng.below(500));
        for (auto& x : v)
            x = rng.uniform() * 3;
        const auto s = error_stats(v);
        CHECK(std::abs(s.stddev - std::sqrt(s.variance)) <= 1e-12);
        CHECK(std::abs(s.mode_1dp * 10 - std::round(s.mode_1dp * 10)) < 1e-9);
    }
    CHECK(std::abs(std::sqrt(0.1040) - 0.3226) <= 5e-4);
}

TEST_CASE("error_cdf")
{
    auto cdf = error_cdf(std::vector{0.1, 0.2, 0.3, 0.4}, 0.25);
    REQUIRE(cdf.size() == 2);
    CHECK(cdf[0].upper_edge == 0.25);
    CHECK(cdf[0].cumulative_fraction == 0.5);
    CHECK(cdf[1].cumulative_fraction == 1.0);

    cdf = error_cdf(std::vector{0.33, 0.33, 0.33}, 0.1);
    REQUIRE(cdf.size() == 4);
    CHECK(cdf[0].cumulative_fraction == 0.0);
    CHECK(cdf[2].cumulative_fraction == 0.0);
    CHECK(cdf[3].cumulative_fraction == 1.0);

    cdf = error_cdf(std::vector{0.0}, 0.1);
    REQUIRE(cdf.size() == 1);
    CHECK(cdf[0].cumulative_fraction == 1.0);

    CHECK_THROWS_AS(error_cdf(std::vector<double>{}, 0.1), DomainError);
    CHECK_THROWS_AS(error_cdf(std::vector{0.1}, 0.0), DomainError);
}

TEST_CASE("error_cdf is monotone and ends at one")
{
    Stream rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(1 + rng.below(300));
        for (auto& x : v)
            x = rng.uniform() * rng.uniform() * 4;
        const double bin = 0.01 + rng.uniform() * 0.3;
        const auto cdf = error_cdf(v, bin);
        for (std::size_t k = 1; k < cdf.size(); ++k) {
            CHECK(cdf[k].upper_edge > cdf[k - 1].upper_edge);
            CHECK(cdf[k].cumulative_fraction >= cdf[k - 1].cumulative_fraction);
        }
        CHECK(cdf.back().cumulative_fraction == 1.0);
    }
}

TEST_CASE("heatmap cell assignment")
{
    const Heatmap map(10, 100, 100);
    CHECK(map.columns() == 10);
    CHECK(map.rows() == 10);
    CHECK(map.locate({0, 0}) == std::pair<std::size_t, std::size_t>{0, 0});
    CHECK(map.locate({10, 10}) == std::pair<std::size_t, std::size_t>{0, 0});
    CHECK(map.locate({10.5, 20}) == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(map.locate({100, 100}) == std::pair<std::size_t, std::size_t>{9, 9});

    const Heatmap partial(30, 100, 100);
    CHECK(partial.columns() == 4);
    CHECK(partial.locate({95, 0}).first == 3);
}

TEST_CASE("geographic_error_grid")
{
    FieldConfig field;
    LocalizationOutcome out;
    out.nodes = {settled(0, {5, 5}, {5, 8}), settled(1, {55, 45}, {55, 48}), settled(2, {99, 1}, {96, 1}),
                 Node{3, {50, 50}, Role::Blind}, Node{4, {20, 20}, Role::InitialBeacon}};
    const auto map = geographic_error_grid(out, field, 10);
    CHECK(map.total_count() == 3);
    std::size_t nonempty = 0;
    for (std::size_t r = 0; r < map.rows(); ++r)
        for (std::size_t c = 0; c < map.columns(); ++c)
            if (const auto m = map.at(c, r).mean()) {
                ++nonempty;
                CHECK(*m == doctest::Approx(0.3));
            } else {
                CHECK(map.at(c, r).count == 0);
            }
    CHECK(nonempty == 3);
    CHECK(map.at(5, 4).count == 1);

    LocalizationOutcome one;
    one.nodes = {settled(0, {42, 42}, {40, 42})};
    const auto single = geographic_error_grid(one, field, 10);
    CHECK(single.total_count() == 1);
    CHECK(single.at(4, 4).count == 1);
}

TEST_CASE("count_blind and partition")
{
    LocalizationOutcome out;
    out.nodes = {Node{0, {}, Role::InitialBeacon}, settled(1, {}, {}), Node{2, {}, Role::Blind},
                 Node{3, {}, Role::Blind}};
    CHECK(count_blind(out) == 2);
    CHECK(count_blind(out) == out.nodes.size() - out.count(Role::Settled) - out.count(Role::InitialBeacon));

    LocalizationOutcome none;
    none.nodes = {Node{0, {}, Role::InitialBeacon}, settled(1, {}, {})};
    CHECK(count_blind(none) == 0);
}

TEST_CASE("edge_vs_interior")
{
    FieldConfig field;
    LocalizationOutcome out;
    out.nodes = {settled(0, {5, 50}, {5, 60}), settled(1, {50, 50}, {50, 51}), settled(2, {50, 95}, {50, 93}),
                 Node{3, {1, 1}, Role::Blind}};
    const auto split = edge_vs_interior(out, field, 10);
    CHECK(split.edge_count == 2);
    CHECK(split.interior_count == 1);
    CHECK(split.edge_mean() == doctest::Approx(0.6));
    CHECK(split.interior_mean() == doctest::Approx(0.1));
}

TEST_CASE("error_samples only covers settled nodes")
{
    LocalizationOutcome out;
    out.nodes = {Node{0, {}, Role::InitialBeacon}, settled(1, {0, 0}, {3, 4}), Node{2, {}, Role::Blind}};
    const auto s = error_samples(out, 10);
    REQUIRE(s.size() == 1);
    CHECK(s[0].node_id == 1);
    CHECK(s[0].err_norm == 0.5);
}
