// random.hpp
// Seeded random streams. Independent streams are keyed by mixing a master
// seed with ordinals (match index, grid row, grid column) through the
// SplitMix64 finalizer, so results never depend on execution order.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qdating {

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Key for the stream identified by (seed, ordinals...).
constexpr std::uint64_t derive_stream_key(std::uint64_t seed,
                                          std::initializer_list<std::uint64_t> ordinals) noexcept {
    std::uint64_t key = splitmix64_mix(seed);
    for (std::uint64_t ord : ordinals) key = splitmix64_mix(key ^ splitmix64_mix(ord + 0x632BE59BD9B4E019ULL));
    return key;
}

// Thin wrapper over mt19937_64 whose real/integer conversions are written
// out here, so draws are identical across standard library implementations.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> ordinals) {
        return Rng(derive_stream_key(seed, ordinals));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }
    result_type operator()() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % n;
        }
    }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace qdating
