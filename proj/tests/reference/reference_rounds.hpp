#pragma once

// Straight-line reimplementation of the iterative localizer used as an
// oracle: all-pairs neighbor discovery, no connectivity graph, no shared
// estimator code. It shares only the channel (distance, reception law, PRNG
// derivation) with the library, since those are what fix the random draws.

#include <cstdint>
#include <optional>
#include <vector>

#include "wsnloc/field.hpp"
#include "wsnloc/radio.hpp"
#include "wsnloc/rng.hpp"

namespace wsnloc::reference {

struct RefNode {
    Position pos;
    int role = 0;  // 0 dumb, 1 initial beacon, 2 settled, 3 blind
    Position est;
    int round = 0;
};

struct RefOutcome {
    std::vector<RefNode> nodes;
    int rounds = 0;
};

struct RefRecord {
    std::size_t id;
    Position at;
    double factor;
};

inline std::optional<Position> ref_estimate(const std::vector<RefRecord>& recs, const std::vector<double>& bounds,
                                            std::size_t min_size)
{
    if (recs.size() < 3 || recs.size() < min_size)
        return std::nullopt;
    const std::size_t bands = bounds.size();
    std::vector<std::size_t> band(recs.size());
    std::vector<std::size_t> size(bands, 0);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        std::size_t k = 0;
        while (bounds[k] > recs[i].factor)
            ++k;
        band[i] = k;
        ++size[k];
    }
    for (std::size_t k = 0; k + 1 < bands; ++k) {
        if (size[k] > 0 && size[k] < min_size) {
            for (std::size_t i = 0; i < recs.size(); ++i)
                if (band[i] == k)
                    band[i] = k + 1;
            size[k + 1] += size[k];
            size[k] = 0;
        }
    }
    const std::size_t last = bands - 1;
    if (size[last] > 0 && size[last] < min_size) {
        std::size_t target = last;
        for (std::size_t k = 0; k < last; ++k)
            if (size[k] > 0)
                target = k;
        for (std::size_t i = 0; i < recs.size(); ++i)
            if (band[i] == last)
                band[i] = target;
        size[target] += size[last];
        size[last] = 0;
    }

    std::vector<Position> cents;
    std::vector<double> weights;
    for (std::size_t k = 0; k < bands; ++k) {
        if (size[k] == 0)
            continue;
        double sx = 0, sy = 0, sf = 0;
        for (std::size_t i = 0; i < recs.size(); ++i) {
            if (band[i] != k)
                continue;
            sx += recs[i].at.x;
            sy += recs[i].at.y;
            sf += recs[i].factor;
        }
        const double n = static_cast<double>(size[k]);
        cents.push_back({sx / n, sy / n});
        weights.push_back(sf / n);
    }
    if (cents.size() == 1)
        return cents[0];
    double wx = 0, wy = 0, w = 0;
    for (std::size_t k = 0; k < cents.size(); ++k) {
        wx += weights[k] * cents[k].x;
        wy += weights[k] * cents[k].y;
        w += weights[k];
    }
    return Position{wx / w, wy / w};
}

inline RefOutcome reference_rounds(std::vector<RefNode> nodes, double r, const ReceptionModel& model,
                                   const SamplingParams& sampling, const std::vector<double>& bounds,
                                   std::size_t min_size, int max_rounds, std::uint64_t reception_seed)
{
    const int slots = static_cast<int>(sampling.sample_time / sampling.beacon_period + 1e-9);
    RefOutcome out;
    for (int round = 1; round <= max_rounds; ++round) {
        const std::uint64_t round_seed = derive_seed(reception_seed, static_cast<std::uint64_t>(round));
        std::vector<std::pair<std::size_t, Position>> settle;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].role != 0)
                continue;
            Stream stream(derive_seed(round_seed, static_cast<std::uint64_t>(i)));
            std::vector<RefRecord> recs;
            for (std::size_t j = 0; j < nodes.size(); ++j) {
                if (j == i || (nodes[j].role != 1 && nodes[j].role != 2))
                    continue;
                const double d = distance(nodes[i].pos, nodes[j].pos);
                if (d > r)
                    continue;
                const double p = model.probability(d);
                int heard = 0;
                for (int s = 0; s < slots; ++s)
                    if (stream.uniform() < p)
                        ++heard;
                if (heard > 0)
                    recs.push_back({j, nodes[j].role == 1 ? nodes[j].pos : nodes[j].est,
                                    100.0 * heard / static_cast<double>(slots)});
            }
            if (auto e = ref_estimate(recs, bounds, min_size))
                settle.emplace_back(i, *e);
        }
        for (auto& [i, e] : settle) {
            nodes[i].role = 2;
            nodes[i].est = e;
            nodes[i].round = round;
        }
        out.rounds = round;
        if (settle.empty())
            break;
    }
    for (auto& n : nodes)
        if (n.role == 0)
            n.role = 3;
    out.nodes = std::move(nodes);
    return out;
}

}  // namespace wsnloc::reference
