// game.hpp
// Turn protocols for a quantum player Q and a classic player C courting the
// same woman, and the D/T statistic (Q successes - C successes) / T.
//
// C always moves first. In Game 1 each player makes one proposal per turn;
// in Game 2 C makes N/2 proposals and Q still makes one. Every proposal that
// lands on the chosen woman gets its own acceptance draw. The two success
// flags of a turn are counted independently: C succeeding does not stop Q.

#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "qdating/csv.hpp"
#include "qdating/error.hpp"
#include "qdating/random.hpp"
#include "qdating/statevector.hpp"
#include "qdating/strategies.hpp"

namespace qdating {

enum class GameVariant { Game1 = 1, Game2 = 2 };

inline int to_int(GameVariant v) noexcept { return static_cast<int>(v); }

inline std::optional<GameVariant> parse_variant(std::string_view s) noexcept {
    if (s == "1") return GameVariant::Game1;
    if (s == "2") return GameVariant::Game2;
    return std::nullopt;
}

inline void check_probability(double p, std::string_view what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw ConfigError(std::string(what) + " must lie in [0, 1], got " + format_real(p));
}

struct WomanProfile {
    Index target = 0;
    double p_accept_classic = 0.0;
    double p_accept_quantum = 0.0;

    void validate() const {
        check_probability(p_accept_classic, "classic acceptance probability");
        check_probability(p_accept_quantum, "quantum acceptance probability");
    }
};

inline constexpr std::uint64_t kDefaultTrials = 1000;

struct GameConfig {
    int n_qubits = 3;
    GameVariant variant = GameVariant::Game1;
    std::uint64_t trials = kDefaultTrials;
    std::uint64_t classic_attempts_per_turn = 1;
    std::uint64_t quantum_iterations = 1;
    ClassicStrategy classic_strategy = ClassicStrategy::Memoryless;
    std::uint64_t seed = 0;

    Index n_women() const noexcept { return dimension_of(n_qubits); }

    // Standard protocol settings: one classic attempt in Game 1, N/2 in Game 2.
    static GameConfig make(GameVariant variant, int n_qubits, std::uint64_t trials, std::uint64_t seed,
                           ClassicStrategy classic = ClassicStrategy::Memoryless,
                           std::uint64_t quantum_iterations = 1) {
        check_qubits(n_qubits);
        GameConfig cfg;
        cfg.n_qubits = n_qubits;
        cfg.variant = variant;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.classic_strategy = classic;
        cfg.quantum_iterations = quantum_iterations;
        cfg.classic_attempts_per_turn = variant == GameVariant::Game1 ? 1 : cfg.n_women() / 2;
        cfg.validate();
        return cfg;
    }

    // Game 2 accepts any budget in [1, N] so the protocols can be compared
    // head to head; make() always picks N/2.
    void validate() const {
        check_qubits(n_qubits);
        if (trials == 0) throw ConfigError("trials must be positive");
        if (variant == GameVariant::Game2 && n_women() < 2)
            throw ConfigError("Game 2 needs at least two women (N/2 classic attempts)");
        if (variant == GameVariant::Game1 && classic_attempts_per_turn != 1)
            throw ConfigError("Game 1 gives the classic player exactly one attempt per turn");
        if (classic_attempts_per_turn == 0 || classic_attempts_per_turn > n_women())
            throw ConfigError("classic attempts per turn must lie in [1, N]");
        if (quantum_iterations > grover_iteration_bound(n_women()))
            throw ConfigError("Grover iteration count exceeds 10 sqrt(N)");
    }
};

struct TurnOutcome {
    bool c_success = false;
    bool q_success = false;
};

struct GameStats {
    std::uint64_t q_successes = 0;
    std::uint64_t c_successes = 0;
    std::uint64_t trials = 0;
    double d_over_t = 0.0;
};

// Plays turns for one (config, woman) pair, reusing the sweep scratch state.
class TurnPlayer {
public:
    TurnPlayer(const GameConfig& cfg, const WomanProfile& woman)
        : cfg_(cfg), woman_(woman), oracle_(woman.target, cfg.n_qubits), sweep_(cfg.n_women()) {
        cfg_.validate();
        woman_.validate();
    }

    TurnOutcome play(Rng& rng) {
        TurnOutcome out;
        const Index n = cfg_.n_women();
        sweep_.reset();
        for (std::uint64_t a = 0; a < cfg_.classic_attempts_per_turn; ++a) {
            const Index pick = cfg_.classic_strategy == ClassicStrategy::Memoryless
                                   ? classic_memoryless_propose(n, rng)
                                   : classic_sweep_propose(n, sweep_, rng);
            if (pick == woman_.target && rng.bernoulli(woman_.p_accept_classic)) out.c_success = true;
        }
        const Index pick = quantum_propose(cfg_.n_qubits, oracle_, cfg_.quantum_iterations, rng);
        if (pick == woman_.target && rng.bernoulli(woman_.p_accept_quantum)) out.q_success = true;
        return out;
    }

private:
    GameConfig cfg_;
    WomanProfile woman_;
    OracleSpec oracle_;
    SweepState sweep_;
};

inline TurnOutcome play_turn(const GameConfig& cfg, const WomanProfile& woman, Rng& rng) {
    return TurnPlayer(cfg, woman).play(rng);
}

inline GameStats run_match(const GameConfig& cfg, const WomanProfile& woman, Rng& rng) {
    TurnPlayer player(cfg, woman);
    GameStats stats;
    stats.trials = cfg.trials;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        const TurnOutcome o = player.play(rng);
        stats.c_successes += o.c_success;
        stats.q_successes += o.q_success;
    }
    stats.d_over_t = (static_cast<double>(stats.q_successes) - static_cast<double>(stats.c_successes)) /
                     static_cast<double>(stats.trials);
    return stats;
}

// Match number `ordinal` drawn from the stream keyed by (cfg.seed, ordinal).
inline GameStats run_match(const GameConfig& cfg, const WomanProfile& woman, std::uint64_t ordinal = 0) {
    Rng rng = Rng::stream(cfg.seed, {ordinal});
    return run_match(cfg, woman, rng);
}

// Probability that C finds and is accepted by the woman at least once in a turn.
inline double classic_turn_success(const GameConfig& cfg, double p_accept_classic) {
    const double n = static_cast<double>(cfg.n_women());
    const double attempts = static_cast<double>(cfg.classic_attempts_per_turn);
    if (cfg.classic_strategy == ClassicStrategy::Sweep) return p_accept_classic * attempts / n;
    return 1.0 - std::pow(1.0 - p_accept_classic / n, attempts);
}

// Analytic mean of D/T: Q's success rate p_G * P_q minus C's per-turn rate.
inline double expected_dt(const GameConfig& cfg, const WomanProfile& woman) {
    cfg.validate();
    woman.validate();
    const double p_grover = closed_form_probability(cfg.n_women(), cfg.quantum_iterations);
    return p_grover * woman.p_accept_quantum - classic_turn_success(cfg, woman.p_accept_classic);
}

inline constexpr std::string_view kGameStatsHeader = "variant,N,Pc,Pq,T,c_success,q_success,d_over_t,seed";

inline std::string format_game_row(const GameConfig& cfg, const WomanProfile& woman, const GameStats& stats) {
    return std::to_string(to_int(cfg.variant)) + ',' + std::to_string(cfg.n_women()) + ',' +
           format_real(woman.p_accept_classic) + ',' + format_real(woman.p_accept_quantum) + ',' +
           std::to_string(stats.trials) + ',' + std::to_string(stats.c_successes) + ',' +
           std::to_string(stats.q_successes) + ',' + format_real(stats.d_over_t) + ',' + std::to_string(cfg.seed);
}

inline KeyValues to_key_values(const GameConfig& cfg) {
    return {
        {"variant", std::to_string(to_int(cfg.variant))},
        {"qubits", std::to_string(cfg.n_qubits)},
        {"trials", std::to_string(cfg.trials)},
        {"classic_attempts_per_turn", std::to_string(cfg.classic_attempts_per_turn)},
        {"quantum_iterations", std::to_string(cfg.quantum_iterations)},
        {"classic_strategy", std::string(to_string(cfg.classic_strategy))},
        {"seed", std::to_string(cfg.seed)},
    };
}

namespace detail {
inline std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError("'" + key + "' must be a non-negative integer, got '" + value + "'");
    try {
        return std::stoull(value);
    } catch (const std::out_of_range&) {
        throw ConfigError("'" + key + "' out of range: '" + value + "'");
    }
}
}  // namespace detail

// Inverse of to_key_values. `variant` and `qubits` are required; the attempt
// budget defaults to the protocol's standard value.
inline GameConfig game_config_from(const KeyValues& kv) {
    const auto get = [&](const std::string& key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    for (const auto& [key, value] : kv) {
        if (key != "variant" && key != "qubits" && key != "trials" && key != "classic_attempts_per_turn" &&
            key != "quantum_iterations" && key != "classic_strategy" && key != "seed")
            throw ConfigError("unknown game config key '" + key + "'");
    }
    const std::string* variant_s = get("variant");
    const std::string* qubits_s = get("qubits");
    if (!variant_s || !qubits_s) throw ConfigError("game config needs 'variant' and 'qubits'");
    const auto variant = parse_variant(*variant_s);
    if (!variant) throw ConfigError("variant must be 1 or 2, got '" + *variant_s + "'");
    const auto qubits = detail::parse_u64("qubits", *qubits_s);
    if (qubits > static_cast<std::uint64_t>(kMaxQubits)) throw ConfigError("qubits out of range");

    ClassicStrategy classic = ClassicStrategy::Memoryless;
    if (const auto* s = get("classic_strategy")) {
        const auto parsed = parse_classic_strategy(*s);
        if (!parsed) throw ConfigError("classic_strategy must be memoryless or sweep, got '" + *s + "'");
        classic = *parsed;
    }
    GameConfig cfg;
    cfg.n_qubits = static_cast<int>(qubits);
    cfg.variant = *variant;
    cfg.classic_strategy = classic;
    if (const auto* s = get("trials")) cfg.trials = detail::parse_u64("trials", *s);
    if (const auto* s = get("quantum_iterations")) cfg.quantum_iterations = detail::parse_u64("quantum_iterations", *s);
    if (const auto* s = get("seed")) cfg.seed = detail::parse_u64("seed", *s);
    cfg.classic_attempts_per_turn = cfg.variant == GameVariant::Game1 ? 1 : cfg.n_women() / 2;
    if (const auto* s = get("classic_attempts_per_turn"))
        cfg.classic_attempts_per_turn = detail::parse_u64("classic_attempts_per_turn", *s);
    cfg.validate();
    return cfg;
}

inline void write_game_config(std::ostream& out, const GameConfig& cfg) { write_key_values(out, to_key_values(cfg)); }

inline GameConfig read_game_config(std::istream& in) { return game_config_from(read_key_values(in)); }

}  // namespace qdating
