// strategies.hpp
// How each player picks the woman to propose to: the quantum player runs
// Grover iterates and measures; the classic player either guesses uniformly
// every attempt or walks the list without repeats.

#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdating/error.hpp"
#include "qdating/random.hpp"
#include "qdating/statevector.hpp"

namespace qdating {

enum class ClassicStrategy { Memoryless, Sweep };

inline std::string_view to_string(ClassicStrategy s) noexcept {
    return s == ClassicStrategy::Memoryless ? "memoryless" : "sweep";
}

inline std::optional<ClassicStrategy> parse_classic_strategy(std::string_view s) noexcept {
    if (s == "memoryless") return ClassicStrategy::Memoryless;
    if (s == "sweep") return ClassicStrategy::Sweep;
    return std::nullopt;
}

// Indices already proposed during the current turn. Draws come from a
// partially shuffled pool, so reset is O(1) and each proposal is O(1).
class SweepState {
public:
    explicit SweepState(Index n) : pool_(n) {
        if (n == 0) throw SizeError("sweep over an empty set");
        std::iota(pool_.begin(), pool_.end(), Index{0});
    }

    Index size() const noexcept { return pool_.size(); }
    std::span<const Index> visited() const noexcept { return {pool_.data(), drawn_}; }
    bool exhausted() const noexcept { return drawn_ == pool_.size(); }
    void reset() noexcept { drawn_ = 0; }

    // Uniform pick among unvisited indices; marks it visited. Any source
    // with below(n) works, which lets tests enumerate every draw path.
    template <typename Source>
    Index draw(Source& rng) {
        if (exhausted()) throw ExhaustedError("all " + std::to_string(pool_.size()) + " indices already proposed");
        const std::size_t j = drawn_ + static_cast<std::size_t>(rng.below(pool_.size() - drawn_));
        std::swap(pool_[drawn_], pool_[j]);
        return pool_[drawn_++];
    }

private:
    std::vector<Index> pool_;
    std::size_t drawn_ = 0;
};

// Fresh uniform state, `iterations` Grover iterates, one measurement.
inline Index quantum_propose(int n_qubits, const OracleSpec& oracle, std::uint64_t iterations, Rng& rng) {
    return measure(run_grover(n_qubits, oracle, iterations), rng);
}

inline Index classic_memoryless_propose(Index n, Rng& rng) {
    if (n == 0) throw SizeError("memoryless proposal over an empty set");
    return rng.below(n);
}

template <typename Source>
Index classic_sweep_propose(Index n, SweepState& sweep, Source& rng) {
    if (sweep.size() != n)
        throw DimensionError("sweep state covers " + std::to_string(sweep.size()) + " indices, expected " +
                             std::to_string(n));
    return sweep.draw(rng);
}

}  // namespace qdating
