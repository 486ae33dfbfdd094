// statevector.hpp
// Complex state-vector simulation of the Grover search iterate over an
// n-qubit register, plus the closed-form rotation formulas used to check it.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qdating/error.hpp"
#include "qdating/random.hpp"

namespace qdating {

using Amplitude = std::complex<double>;
using Index = std::uint64_t;

// Register sizes accepted by the simulator. Zero qubits is the one-woman
// market (N = 1); twenty keeps the vector at 16 MiB.
inline constexpr int kMinQubits = 0;
inline constexpr int kMaxQubits = 20;

// Tolerance past which a state counts as unnormalized. States are never
// renormalized behind the caller's back.
inline constexpr double kNormTolerance = 1e-6;

inline void check_qubits(int n_qubits) {
    if (n_qubits < kMinQubits || n_qubits > kMaxQubits)
        throw SizeError("qubit count " + std::to_string(n_qubits) + " outside [" +
                        std::to_string(kMinQubits) + ", " + std::to_string(kMaxQubits) + "]");
}

inline constexpr Index dimension_of(int n_qubits) noexcept { return Index{1} << n_qubits; }

inline constexpr bool is_power_of_two(std::uint64_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

// log2 of a power of two.
inline int qubits_for(std::uint64_t n) noexcept {
    int q = 0;
    while ((std::uint64_t{1} << q) < n) ++q;
    return q;
}

class QuantumState {
public:
    // Basis state |index>.
    static QuantumState basis(int n_qubits, Index index) {
        check_qubits(n_qubits);
        QuantumState s(n_qubits);
        if (index >= s.size()) throw IndexError("basis index " + std::to_string(index) + " out of range");
        s.amplitudes_[index] = Amplitude{1.0, 0.0};
        return s;
    }

    // Takes ownership of explicit amplitudes; length must be 2^n_qubits.
    static QuantumState from_amplitudes(int n_qubits, std::vector<Amplitude> amplitudes) {
        check_qubits(n_qubits);
        if (amplitudes.size() != dimension_of(n_qubits))
            throw DimensionError("expected " + std::to_string(dimension_of(n_qubits)) + " amplitudes, got " +
                                 std::to_string(amplitudes.size()));
        QuantumState s;
        s.n_qubits_ = n_qubits;
        s.amplitudes_ = std::move(amplitudes);
        return s;
    }

    int n_qubits() const noexcept { return n_qubits_; }
    Index size() const noexcept { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
    std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }
    const Amplitude& operator[](Index i) const { return amplitudes_[i]; }

    // Sum of squared magnitudes.
    double norm_squared() const noexcept {
        double acc = 0.0;
        for (const auto& a : amplitudes_) acc += std::norm(a);
        return acc;
    }

private:
    QuantumState() = default;
    explicit QuantumState(int n_qubits) : n_qubits_(n_qubits), amplitudes_(dimension_of(n_qubits)) {}

    int n_qubits_ = 0;
    std::vector<Amplitude> amplitudes_;
};

inline void check_normalized(const QuantumState& state) {
    const double drift = std::abs(state.norm_squared() - 1.0);
    if (!(drift <= kNormTolerance))
        throw StateError("state norm drifted by " + std::to_string(drift));
}

struct OracleSpec {
    Index target = 0;
    int n_qubits = 0;

    OracleSpec() = default;
    OracleSpec(Index target_, int n_qubits_) : target(target_), n_qubits(n_qubits_) {
        check_qubits(n_qubits);
        if (target >= dimension_of(n_qubits))
            throw IndexError("oracle target " + std::to_string(target) + " outside register of " +
                             std::to_string(dimension_of(n_qubits)));
    }
};

// Lookup from woman index to the feature that identifies her. Indices are
// exactly 0..N-1 and labels are unique; N must be a power of two so the
// table maps onto a register.
class FeatureTable {
public:
    using Entry = std::pair<Index, std::string>;

    explicit FeatureTable(std::vector<Entry> entries) : entries_(std::move(entries)) {
        std::sort(entries_.begin(), entries_.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        if (entries_.empty()) throw MalformedTableError("feature table is empty");
        if (!is_power_of_two(entries_.size()))
            throw MalformedTableError("feature table size " + std::to_string(entries_.size()) +
                                      " is not a power of two");
        std::unordered_set<std::string> seen;
        for (Index i = 0; i < entries_.size(); ++i) {
            if (entries_[i].first != i)
                throw MalformedTableError("feature table index " + std::to_string(i) + " missing or repeated");
            if (!seen.insert(entries_[i].second).second)
                throw MalformedTableError("duplicate feature '" + entries_[i].second + "'");
        }
    }

    Index size() const noexcept { return entries_.size(); }
    int n_qubits() const noexcept { return qubits_for(entries_.size()); }
    std::span<const Entry> entries() const noexcept { return entries_; }

private:
    std::vector<Entry> entries_;
};

namespace detail {
inline std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}
}  // namespace detail

// Two-column CSV with the header `index,feature`.
inline FeatureTable read_feature_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != "index,feature")
        throw MalformedTableError("feature table CSV must start with header 'index,feature'");
    std::vector<FeatureTable::Entry> entries;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw MalformedTableError("line " + std::to_string(line_no) + ": expected 'index,feature'");
        const std::string idx = detail::trim(line.substr(0, comma));
        const std::string label = detail::trim(line.substr(comma + 1));
        if (idx.empty() || label.empty() || !std::all_of(idx.begin(), idx.end(), ::isdigit))
            throw MalformedTableError("line " + std::to_string(line_no) + ": bad row '" + line + "'");
        entries.emplace_back(std::stoull(idx), label);
    }
    return FeatureTable(std::move(entries));
}

inline FeatureTable load_feature_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open feature table '" + path + "'");
    return read_feature_table(in);
}

inline OracleSpec build_oracle(const FeatureTable& table, const std::string& desired_feature) {
    const Index* found = nullptr;
    for (const auto& [index, label] : table.entries()) {
        if (label != desired_feature) continue;
        if (found) throw MalformedTableError("feature '" + desired_feature + "' appears more than once");
        found = &index;
    }
    if (!found) throw NotFoundError("no woman with feature '" + desired_feature + "'");
    return OracleSpec(*found, table.n_qubits());
}

// H^{(x)n} |0...0>: every amplitude 1/sqrt(N).
inline QuantumState uniform_superposition(int n_qubits) {
    check_qubits(n_qubits);
    const Index n = dimension_of(n_qubits);
    return QuantumState::from_amplitudes(
        n_qubits, std::vector<Amplitude>(n, Amplitude{1.0 / std::sqrt(static_cast<double>(n)), 0.0}));
}

// Phase kickback with the ancilla eliminated: |w> -> (-1)^{f(w)} |w>.
inline QuantumState apply_oracle(QuantumState state, const OracleSpec& oracle) {
    if (state.n_qubits() != oracle.n_qubits)
        throw DimensionError("oracle built for " + std::to_string(oracle.n_qubits) + " qubits, state has " +
                             std::to_string(state.n_qubits()));
    state.amplitudes()[oracle.target] = -state[oracle.target];
    return state;
}

// H (2|0><0| - I) H, which reduces to a_i -> 2*mean - a_i.
inline QuantumState apply_diffusion(QuantumState state) {
    auto amps = state.amplitudes();
    Amplitude sum{0.0, 0.0};
    for (const auto& a : amps) sum += a;
    const Amplitude twice_mean = 2.0 * sum / static_cast<double>(amps.size());
    for (auto& a : amps) a = twice_mean - a;
    return state;
}

inline QuantumState grover_iterate(QuantumState state, const OracleSpec& oracle) {
    return apply_diffusion(apply_oracle(std::move(state), oracle));
}

// Largest iteration count run_grover accepts: 10 sqrt(N).
inline std::uint64_t grover_iteration_bound(Index n) {
    return static_cast<std::uint64_t>(std::floor(10.0 * std::sqrt(static_cast<double>(n))));
}

inline QuantumState run_grover(int n_qubits, const OracleSpec& oracle, std::uint64_t iterations) {
    check_qubits(n_qubits);
    const Index n = dimension_of(n_qubits);
    if (iterations > grover_iteration_bound(n))
        throw ConfigError(std::to_string(iterations) + " Grover iterations exceed the bound " +
                          std::to_string(grover_iteration_bound(n)) + " for N=" + std::to_string(n));
    QuantumState state = uniform_superposition(n_qubits);
    for (std::uint64_t k = 0; k < iterations; ++k) state = grover_iterate(std::move(state), oracle);
    check_normalized(state);
    return state;
}

inline double success_probability(const QuantumState& state, Index target) {
    if (target >= state.size())
        throw IndexError("target " + std::to_string(target) + " outside register of " + std::to_string(state.size()));
    return std::norm(state[target]);
}

// Collapse: returns i with probability |a_i|^2. The state is left untouched.
inline Index measure(const QuantumState& state, Rng& rng) {
    check_normalized(state);
    const double norm = state.norm_squared();
    const double u = rng.uniform01() * norm;
    double cumulative = 0.0;
    Index last_nonzero = 0;
    const auto amps = state.amplitudes();
    for (Index i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) continue;
        cumulative += p;
        last_nonzero = i;
        if (u < cumulative) return i;
    }
    return last_nonzero;
}

// Grover rotation angle arcsin(1/sqrt(N)).
inline double grover_angle(std::uint64_t n) { return std::asin(1.0 / std::sqrt(static_cast<double>(n))); }

// Target amplitude after k iterates from the uniform start: sin((2k+1) theta).
inline double closed_form_amplitude(std::uint64_t n, std::uint64_t iterations) {
    if (n == 0) throw SizeError("N must be positive");
    return std::sin(static_cast<double>(2 * iterations + 1) * grover_angle(n));
}

// Target probability after k iterates: sin^2((2k+1) theta).
inline double closed_form_probability(std::uint64_t n, std::uint64_t iterations) {
    const double a = closed_form_amplitude(n, iterations);
    return a * a;
}

// argmax_k closed_form_probability(N, k) over 0 <= k <= ceil(pi / (4 theta)),
// smallest k on ties (so N = 2, where every k gives 1/2, yields 0).
inline std::uint64_t optimal_iterations(std::uint64_t n) {
    if (n < 2) throw SizeError("optimal_iterations needs N >= 2");
    constexpr double kTieTolerance = 1e-12;
    const auto upper = static_cast<std::uint64_t>(std::ceil(std::numbers::pi / (4.0 * grover_angle(n))));
    std::uint64_t best_k = 0;
    double best_p = closed_form_probability(n, 0);
    for (std::uint64_t k = 1; k <= upper; ++k) {
        const double p = closed_form_probability(n, k);
        if (p > best_p + kTieTolerance) {
            best_p = p;
            best_k = k;
        }
    }
    return best_k;
}

}  // namespace qdating
