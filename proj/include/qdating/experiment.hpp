// experiment.hpp
// Harnesses: the exact probability trace of the Grover search and
// the (P_c, P_q) sweep of D/T, with CSV emitters for both.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <ostream>
#include <span>
#include <thread>
#include <vector>

#include "qdating/csv.hpp"
#include "qdating/error.hpp"
#include "qdating/game.hpp"
#include "qdating/random.hpp"
#include "qdating/statevector.hpp"
#include "qdating/strategies.hpp"

namespace qdating {

struct TracePoint {
    std::uint64_t iteration = 0;
    double p_target = 0.0;
    double p_other_each = 0.0;  // shared by every non-target woman
    double amp_target = 0.0;    // real part; the search never leaves the real axis
};

inline std::vector<TracePoint> amplitude_trace(int n_qubits, Index target, std::uint64_t max_iterations) {
    check_qubits(n_qubits);
    const Index n = dimension_of(n_qubits);
    if (max_iterations > grover_iteration_bound(n))
        throw ConfigError("trace length exceeds the 10 sqrt(N) iteration bound");
    const OracleSpec oracle(target, n_qubits);
    const Index other = target == 0 ? 1 : 0;

    std::vector<TracePoint> trace;
    trace.reserve(max_iterations + 1);
    QuantumState state = uniform_superposition(n_qubits);
    for (std::uint64_t k = 0;; ++k) {
        check_normalized(state);
        trace.push_back({k, success_probability(state, target), n > 1 ? std::norm(state[other]) : 0.0,
                         state[target].real()});
        if (k == max_iterations) break;
        state = grover_iterate(std::move(state), oracle);
    }
    return trace;
}

struct SweepSpec {
    int n_qubits = 3;
    GameVariant variant = GameVariant::Game1;
    ClassicStrategy classic_strategy = ClassicStrategy::Memoryless;
    std::uint64_t grid_points = 21;  // per axis, covering 0, 1/(G-1), ..., 1
    std::uint64_t trials_per_cell = kDefaultTrials;
    std::uint64_t seed = 0;
    std::uint64_t quantum_iterations = 1;
    Index target = 0;
    unsigned threads = 0;  // 0: hardware concurrency; never affects results

    GameConfig game_config() const {
        return GameConfig::make(variant, n_qubits, trials_per_cell, seed, classic_strategy, quantum_iterations);
    }

    void validate() const {
        if (grid_points < 2) throw ConfigError("sweep grid needs at least 2 points per axis");
        if (trials_per_cell == 0) throw ConfigError("trials per cell must be positive");
        game_config();
        if (target >= dimension_of(n_qubits)) throw IndexError("sweep target outside the register");
    }
};

struct SweepRow {
    double p_c = 0.0;
    double p_q = 0.0;
    double d_over_t_measured = 0.0;
    double d_over_t_expected = 0.0;
    std::uint64_t trials = 0;
};

inline double grid_value(std::uint64_t i, std::uint64_t grid_points) {
    return static_cast<double>(i) / static_cast<double>(grid_points - 1);
}

// Rows in P_c-major order. Cell (i, j) draws from the stream keyed by
// (seed, i, j), so the result is independent of thread scheduling.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    const GameConfig cfg = spec.game_config();
    const std::uint64_t g = spec.grid_points;
    const std::uint64_t cells = g * g;
    std::vector<SweepRow> rows(cells);

    const auto eval_cell = [&](std::uint64_t cell) {
        const std::uint64_t i = cell / g;
        const std::uint64_t j = cell % g;
        const WomanProfile woman{spec.target, grid_value(i, g), grid_value(j, g)};
        Rng rng = Rng::stream(spec.seed, {i, j});
        const GameStats stats = run_match(cfg, woman, rng);
        rows[cell] = {woman.p_accept_classic, woman.p_accept_quantum, stats.d_over_t, expected_dt(cfg, woman),
                      stats.trials};
    };

    unsigned workers = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, cells));
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < cells; ++c) eval_cell(c);
        return rows;
    }

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t c = next++; c < cells; c = next++) {
                    try {
                        eval_cell(c);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = cells;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

struct BoundaryPoint {
    double p_q = 0.0;
    double p_c_zero = 0.0;
};

// D/T = 0 contour of the expected surface: for each P_q > 0, the first sign
// change along P_c, linearly interpolated. Columns without one are skipped.
inline std::vector<BoundaryPoint> sign_boundary(std::span<const SweepRow> rows) {
    std::uint64_t g = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(rows.size()))));
    if (g < 2 || g * g != rows.size())
        throw ShapeError("sweep has " + std::to_string(rows.size()) + " rows, not a square grid");
    for (std::uint64_t i = 0; i < g; ++i) {
        for (std::uint64_t j = 0; j < g; ++j) {
            const SweepRow& r = rows[i * g + j];
            if (r.p_c != rows[i * g].p_c || r.p_q != rows[j].p_q)
                throw ShapeError("sweep rows are not a P_c-major Cartesian grid");
        }
        if (i > 0 && !(rows[i * g].p_c > rows[(i - 1) * g].p_c))
            throw ShapeError("P_c axis is not increasing");
    }

    std::vector<BoundaryPoint> boundary;
    for (std::uint64_t j = 0; j < g; ++j) {
        if (!(rows[j].p_q > 0.0)) continue;
        for (std::uint64_t i = 0; i + 1 < g; ++i) {
            const SweepRow& lo = rows[i * g + j];
            const SweepRow& hi = rows[(i + 1) * g + j];
            const double d0 = lo.d_over_t_expected;
            const double d1 = hi.d_over_t_expected;
            if ((d0 >= 0.0) == (d1 >= 0.0)) continue;
            const double frac = d0 / (d0 - d1);
            boundary.push_back({lo.p_q, lo.p_c + frac * (hi.p_c - lo.p_c)});
            break;
        }
    }
    return boundary;
}

inline void write_trace_csv(std::ostream& out, std::span<const TracePoint> trace) {
    out << "iteration,p_target,p_other_each,amp_target\n";
    for (const auto& p : trace)
        out << p.iteration << ',' << format_real(p.p_target) << ',' << format_real(p.p_other_each) << ','
            << format_real(p.amp_target) << '\n';
}

inline void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "p_c,p_q,d_over_t,d_over_t_expected,trials\n";
    for (const auto& r : rows)
        out << format_real(r.p_c) << ',' << format_real(r.p_q) << ',' << format_real(r.d_over_t_measured) << ','
            << format_real(r.d_over_t_expected) << ',' << r.trials << '\n';
}

inline void write_boundary_csv(std::ostream& out, std::span<const BoundaryPoint> boundary) {
    out << "p_q,p_c_zero\n";
    for (const auto& b : boundary) out << format_real(b.p_q) << ',' << format_real(b.p_c_zero) << '\n';
}

}  // namespace qdating
