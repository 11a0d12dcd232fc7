#pragma once

// Deterministic shuffling. std::shuffle and the standard distributions are
// implementation-defined, so seeded runs would differ across standard
// libraries; mt19937_64 raw output is fully specified, and we draw bounded
// values from it ourselves.

#include <cstdint>
#include <random>
#include <vector>

namespace monosplit {

/// Bounded draw in [0, bound). Plain modulo: the negligible bias does not
/// matter for shuffling, determinism across platforms does.
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

/// Fisher-Yates shuffle with platform-independent draws.
template <typename T>
void deterministic_shuffle(std::vector<T>& values, std::mt19937_64& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j =
            static_cast<std::size_t>(bounded_draw(rng, i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace monosplit
