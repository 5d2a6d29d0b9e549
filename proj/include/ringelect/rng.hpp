#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace ringelect {

/// Seeded generator for scenario construction. The engine is std::mt19937_64
/// (bit-exact everywhere by the standard); bounded draws use plain rejection
/// on its raw output rather than std::uniform_int_distribution, whose
/// algorithm varies between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound)
    {
        // Largest multiple of bound that fits; values above it are redrawn.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = engine_();
        while (x >= limit) {
            x = engine_();
        }
        return x % bound;
    }

    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi)
    {
        if (hi - lo == UINT64_MAX) {
            return engine_();
        }
        return lo + below(hi - lo + 1);
    }

    /// Fisher-Yates, last element first.
    template <typename T>
    void shuffle(std::span<T> items)
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer over seed + index * golden gamma; gives each trial of a
/// sweep its own independent stream.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace ringelect
