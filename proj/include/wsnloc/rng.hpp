#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace wsnloc {

// SplitMix64 output function. Used to decorrelate derived seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Named substream derivation. A child seed depends only on the parent seed and
// the label, so modules drawing from different labels never perturb each other.
std::uint64_t derive_seed(std::uint64_t parent, std::string_view label) noexcept;
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept;

// A replayable random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the conversions below are written out
// by hand because the standard distributions are implementation-defined.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer on [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

}  // namespace wsnloc
