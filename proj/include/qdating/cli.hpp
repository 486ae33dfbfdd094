// cli.hpp
// Command-line front end: trace, game, sweep, analytic and replay.
//
// Exit codes: 0 success, 1 domain or runtime error, 2 usage error.

#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qdating/csv.hpp"
#include "qdating/error.hpp"
#include "qdating/experiment.hpp"
#include "qdating/game.hpp"
#include "qdating/manifest.hpp"
#include "qdating/statevector.hpp"
#include "qdating/strategies.hpp"

namespace qdating::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Exact text for a double, so manifests round-trip.
inline std::string exact_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct TraceOptions {
    int qubits = 0;
    std::optional<std::uint64_t> target;
    std::string table;  // `index,feature` CSV, used with `feature` instead of `target`
    std::string feature;
    std::uint64_t iterations = 0;
    std::string out;
};

struct GameOptions {
    std::string variant;
    int qubits = 0;
    double pc = 0.0;
    double pq = 0.0;
    std::uint64_t trials = kDefaultTrials;
    std::optional<std::uint64_t> seed;
    std::string classic_strategy = "memoryless";
    std::uint64_t grover_iterations = 1;
    std::uint64_t target = 0;
    bool header = false;
    std::string out;
};

struct SweepOptions {
    std::string variant;
    int qubits = 0;
    std::uint64_t grid = 21;
    std::uint64_t trials = kDefaultTrials;
    std::optional<std::uint64_t> seed;
    std::string classic_strategy = "memoryless";
    std::uint64_t grover_iterations = 1;
    std::uint64_t target = 0;
    unsigned threads = 0;
    std::string out;
    std::string boundary_out;
};

struct AnalyticOptions {
    std::optional<std::uint64_t> n;
    std::optional<std::uint64_t> iterations;
    std::string variant;
    std::optional<int> qubits;
    std::optional<double> pc;
    std::optional<double> pq;
    std::string classic_strategy = "memoryless";
    std::uint64_t grover_iterations = 1;
};

struct ReplayOptions {
    std::string manifest;
    std::string out;
    std::string boundary_out;
};

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, std::ostream& err) {
    if (seed) return *seed;
    std::random_device rd;
    const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    err << "note: no --seed given, using entropy seed " << s << " (recorded in the manifest)\n";
    return s;
}

inline ClassicStrategy classic_from(const std::string& s) {
    const auto parsed = parse_classic_strategy(s);
    if (!parsed) throw ConfigError("unknown classic strategy '" + s + "'");
    return *parsed;
}

inline int cmd_trace(const TraceOptions& o, std::ostream& out) {
    Index target = 0;
    if (o.target) {
        target = *o.target;
    } else {
        const OracleSpec oracle = build_oracle(load_feature_table(o.table), o.feature);
        if (oracle.n_qubits != o.qubits)
            throw DimensionError("feature table holds " + std::to_string(dimension_of(oracle.n_qubits)) +
                                 " women but --qubits gives " + std::to_string(dimension_of(o.qubits)));
        target = oracle.target;
    }
    const auto trace = amplitude_trace(o.qubits, target, o.iterations);
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    if (o.out.empty()) {
        out << csv.str();
        return kExitOk;
    }
    write_text_file(o.out, csv.str());
    KeyValues params{{"qubits", std::to_string(o.qubits)}, {"iterations", std::to_string(o.iterations)}};
    if (o.target) {
        params["target"] = std::to_string(*o.target);
    } else {
        params["table"] = o.table;
        params["feature"] = o.feature;
    }
    write_manifest({"trace", std::move(params), o.out});
    return kExitOk;
}

inline int cmd_game(const GameOptions& o, std::ostream& out, std::ostream& err) {
    const WomanProfile woman{o.target, o.pc, o.pq};
    woman.validate();
    const auto variant = parse_variant(o.variant);
    if (!variant) throw ConfigError("variant must be 1 or 2");
    const std::uint64_t seed = resolve_seed(o.seed, err);
    const GameConfig cfg =
        GameConfig::make(*variant, o.qubits, o.trials, seed, classic_from(o.classic_strategy), o.grover_iterations);
    if (woman.target >= cfg.n_women()) throw IndexError("target outside the register");
    const GameStats stats = run_match(cfg, woman);

    std::string text;
    if (o.header) text += std::string(kGameStatsHeader) + '\n';
    text += format_game_row(cfg, woman, stats) + '\n';
    out << text;
    if (!o.out.empty()) {
        write_text_file(o.out, text);
        write_manifest({"game",
                        {{"variant", o.variant},
                         {"qubits", std::to_string(o.qubits)},
                         {"pc", exact_real(o.pc)},
                         {"pq", exact_real(o.pq)},
                         {"trials", std::to_string(o.trials)},
                         {"seed", std::to_string(seed)},
                         {"classic-strategy", o.classic_strategy},
                         {"grover-iterations", std::to_string(o.grover_iterations)},
                         {"target", std::to_string(o.target)},
                         {"header", o.header ? "true" : "false"}},
                        o.out});
    }
    return kExitOk;
}

inline int cmd_sweep(const SweepOptions& o, std::ostream& err) {
    const auto variant = parse_variant(o.variant);
    if (!variant) throw ConfigError("variant must be 1 or 2");
    SweepSpec spec;
    spec.n_qubits = o.qubits;
    spec.variant = *variant;
    spec.classic_strategy = classic_from(o.classic_strategy);
    spec.grid_points = o.grid;
    spec.trials_per_cell = o.trials;
    spec.seed = resolve_seed(o.seed, err);
    spec.quantum_iterations = o.grover_iterations;
    spec.target = o.target;
    spec.threads = o.threads;
    const auto rows = run_sweep(spec);

    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    write_text_file(o.out, csv.str());
    KeyValues params{{"variant", o.variant},
                     {"qubits", std::to_string(o.qubits)},
                     {"grid", std::to_string(o.grid)},
                     {"trials", std::to_string(o.trials)},
                     {"seed", std::to_string(spec.seed)},
                     {"classic-strategy", o.classic_strategy},
                     {"grover-iterations", std::to_string(o.grover_iterations)},
                     {"target", std::to_string(o.target)}};
    if (!o.boundary_out.empty()) {
        std::ostringstream b;
        write_boundary_csv(b, sign_boundary(rows));
        write_text_file(o.boundary_out, b.str());
        params["boundary-out"] = o.boundary_out;
    }
    write_manifest({"sweep", std::move(params), o.out});
    return kExitOk;
}

inline int cmd_analytic(const AnalyticOptions& o, std::ostream& out) {
    if (o.n) {
        const std::uint64_t n = *o.n;
        if (!is_power_of_two(n)) throw ConfigError("N=" + std::to_string(n) + " is not a power of two");
        if (o.iterations) {
            out << "probability," << format_real(closed_form_probability(n, *o.iterations)) << '\n';
        } else {
            out << "optimal_iterations," << optimal_iterations(n) << '\n';
        }
        return kExitOk;
    }
    if (o.variant.empty() || !o.qubits || !o.pc || !o.pq)
        throw ConfigError("analytic needs --n, or --variant --qubits --pc --pq");
    const auto variant = parse_variant(o.variant);
    if (!variant) throw ConfigError("variant must be 1 or 2");
    const WomanProfile woman{0, *o.pc, *o.pq};
    const GameConfig cfg =
        GameConfig::make(*variant, *o.qubits, 1, 0, classic_from(o.classic_strategy), o.grover_iterations);
    out << "expected_dt," << format_real(expected_dt(cfg, woman)) << '\n';
    return kExitOk;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Re-runs the subcommand recorded in a manifest, optionally to new paths.
inline int cmd_replay(const ReplayOptions& o, std::ostream& out, std::ostream& err) {
    const RunManifest m = read_manifest(o.manifest);
    if (m.tool_version != kToolVersion)
        err << "warning: manifest written by version " << m.tool_version << ", running " << kToolVersion << '\n';
    if (m.subcommand != "trace" && m.subcommand != "game" && m.subcommand != "sweep")
        throw ConfigError("manifest names unsupported subcommand '" + m.subcommand + "'");
    std::vector<std::string> args{m.subcommand};
    for (const auto& [key, value] : m.parameters) {
        if (key == "header") {
            if (value == "true") args.push_back("--header");
            continue;
        }
        if (key == "boundary-out") continue;
        args.push_back("--" + key);
        args.push_back(value);
    }
    args.push_back("--out");
    args.push_back(o.out.empty() ? m.output : o.out);
    if (const auto it = m.parameters.find("boundary-out"); it != m.parameters.end()) {
        args.push_back("--boundary-out");
        args.push_back(o.boundary_out.empty() ? it->second : o.boundary_out);
    }
    std::ostringstream discard;
    return run(args, m.subcommand == "game" ? discard : out, err);
}

// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Grover-search dating market simulator", "qdating"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    TraceOptions trace;
    auto* trace_cmd = app.add_subcommand("trace", "Exact success-probability trace of the Grover search");
    trace_cmd->add_option("--qubits", trace.qubits, "Register size n (N = 2^n)")
        ->required()
        ->check(CLI::Range(1, kMaxQubits));
    auto* target_opt = trace_cmd->add_option("--target", trace.target, "Index of the chosen woman");
    auto* table_opt = trace_cmd->add_option("--table", trace.table, "Feature table CSV (index,feature)");
    auto* feature_opt = trace_cmd->add_option("--feature", trace.feature, "Desired feature, looked up in --table");
    table_opt->needs(feature_opt)->excludes(target_opt);
    feature_opt->needs(table_opt);
    trace_cmd->add_option("--iterations", trace.iterations, "Number of Grover iterates to trace")->required();
    trace_cmd->add_option("--out", trace.out, "Output CSV (stdout when omitted)");

    const std::vector<std::string> variants{"1", "2"};
    const std::vector<std::string> strategies{"memoryless", "sweep"};

    GameOptions game;
    auto* game_cmd = app.add_subcommand("game", "Play one match and print its statistics row");
    game_cmd->add_option("--variant", game.variant, "1: one attempt each, 2: N/2 classic attempts")
        ->required()
        ->check(CLI::IsMember(variants));
    game_cmd->add_option("--qubits", game.qubits, "Register size n (N = 2^n; 0 allowed)")
        ->required()
        ->check(CLI::Range(0, kMaxQubits));
    game_cmd->add_option("--pc", game.pc, "Acceptance probability for the classic player")->required();
    game_cmd->add_option("--pq", game.pq, "Acceptance probability for the quantum player")->required();
    game_cmd->add_option("--trials", game.trials, "Turns T")->check(CLI::PositiveNumber);
    game_cmd->add_option("--seed", game.seed, "Random seed");
    game_cmd->add_option("--classic-strategy", game.classic_strategy)->check(CLI::IsMember(strategies));
    game_cmd->add_option("--grover-iterations", game.grover_iterations, "Grover iterates per quantum attempt");
    game_cmd->add_option("--target", game.target, "Index of the chosen woman");
    game_cmd->add_flag("--header", game.header, "Print the CSV header line first");
    game_cmd->add_option("--out", game.out, "Also write the row here (with a manifest)");

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "D/T over a (P_c, P_q) grid");
    sweep_cmd->add_option("--variant", sweep.variant)->required()->check(CLI::IsMember(variants));
    sweep_cmd->add_option("--qubits", sweep.qubits)->required()->check(CLI::Range(0, kMaxQubits));
    sweep_cmd->add_option("--grid", sweep.grid, "Grid points per axis (>= 2)")->check(CLI::Range(2, 1001));
    sweep_cmd->add_option("--trials", sweep.trials, "Turns per cell")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", sweep.seed);
    sweep_cmd->add_option("--classic-strategy", sweep.classic_strategy)->check(CLI::IsMember(strategies));
    sweep_cmd->add_option("--grover-iterations", sweep.grover_iterations);
    sweep_cmd->add_option("--target", sweep.target);
    sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0: all cores)");
    sweep_cmd->add_option("--out", sweep.out, "Sweep CSV")->required();
    sweep_cmd->add_option("--boundary-out", sweep.boundary_out, "D/T = 0 contour CSV");

    AnalyticOptions analytic;
    auto* analytic_cmd = app.add_subcommand("analytic", "Closed-form probabilities and expected D/T");
    analytic_cmd->add_option("--n", analytic.n, "Database size N (power of two)");
    analytic_cmd->add_option("--iterations", analytic.iterations);
    analytic_cmd->add_option("--variant", analytic.variant)->check(CLI::IsMember(variants));
    analytic_cmd->add_option("--qubits", analytic.qubits)->check(CLI::Range(0, kMaxQubits));
    analytic_cmd->add_option("--pc", analytic.pc);
    analytic_cmd->add_option("--pq", analytic.pq);
    analytic_cmd->add_option("--classic-strategy", analytic.classic_strategy)->check(CLI::IsMember(strategies));
    analytic_cmd->add_option("--grover-iterations", analytic.grover_iterations);

    ReplayOptions replay;
    auto* replay_cmd = app.add_subcommand("replay", "Regenerate an output from its manifest");
    replay_cmd->add_option("--manifest", replay.manifest)->required();
    replay_cmd->add_option("--out", replay.out, "Write here instead of the recorded path");
    replay_cmd->add_option("--boundary-out", replay.boundary_out);

    std::vector<std::string> argv_storage{"qdating"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    if (*trace_cmd && !trace.target && trace.table.empty()) {
        err << "trace: give --target, or --table with --feature\n";
        return kExitUsage;
    }

    try {
        if (*trace_cmd) return cmd_trace(trace, out);
        if (*game_cmd) return cmd_game(game, out, err);
        if (*sweep_cmd) return cmd_sweep(sweep, err);
        if (*analytic_cmd) return cmd_analytic(analytic, out);
        if (*replay_cmd) return cmd_replay(replay, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace qdating::cli
