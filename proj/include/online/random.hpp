#pragma once

#include <cstdint>
#include <random>

namespace online {

/// Seeded engine used by every generator. mt19937_64 output is fixed by the
/// standard; draws go through uniform_below so results match across libraries.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = Rng::max() - (Rng::max() % bound + 1) % bound;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw > limit);
    return draw % bound;
}

/// Uniform integer in [lo, hi].
inline std::uint64_t uniform_between(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + uniform_below(rng, hi - lo + 1);
}

} // namespace online
