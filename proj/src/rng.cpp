#include "wsnloc/rng.hpp"

namespace wsnloc {

std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::string_view label) noexcept
{
    // FNV-1a over the label bytes.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(mix64(parent) ^ h);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept
{
    return mix64(mix64(parent) + mix64(index ^ 0x5851f42d4c957f2dULL));
}

std::uint64_t Stream::below(std::uint64_t n)
{
    // Rejection sampling: discard the low partial block so every residue is
    // equally likely.
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t r = engine_();
        if (r >= threshold)
            return r % n;
    }
}

}  // namespace wsnloc
