#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "qdating/statevector.hpp"
#include "support/dense_reference.hpp"
#include "support/stats.hpp"

using namespace qdating;

namespace {

// Target/other amplitude pair evolved by hand: the iterate never leaves the
// span of |t> and the uniform mix of the rest.
std::pair<double, double> reduced_grover(double n, int iterations) {
    double a = 1.0 / std::sqrt(n);
    double b = a;
    for (int k = 0; k < iterations; ++k) {
        a = -a;
        const double mean = (a + (n - 1.0) * b) / n;
        a = 2.0 * mean - a;
        b = 2.0 * mean - b;
    }
    return {a, b};
}

QuantumState random_state(int n_qubits, Rng& rng) {
    std::vector<Amplitude> amps(dimension_of(n_qubits));
    double norm = 0.0;
    for (auto& a : amps) {
        a = {rng.uniform01() - 0.5, rng.uniform01() - 0.5};
        norm += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(norm);
    return QuantumState::from_amplitudes(n_qubits, std::move(amps));
}

}  // namespace

TEST(UniformSuperposition, OneQubit) {
    const auto s = uniform_superposition(1);
    ASSERT_EQ(s.size(), 2u);
    for (const auto& a : s.amplitudes()) {
        EXPECT_NEAR(a.real(), 1.0 / std::sqrt(2.0), 1e-15);
        EXPECT_EQ(a.imag(), 0.0);
    }
}

TEST(UniformSuperposition, ThreeAndTenQubits) {
    const auto three = uniform_superposition(3);
    for (const auto& a : three.amplitudes()) EXPECT_NEAR(a.real(), 0.35355339059327373, 1e-15);
    const auto s = uniform_superposition(10);
    ASSERT_EQ(s.size(), 1024u);
    for (const auto& a : s.amplitudes()) EXPECT_DOUBLE_EQ(a.real(), 1.0 / 32.0);
}

TEST(UniformSuperposition, RejectsOutOfRange) {
    EXPECT_THROW(uniform_superposition(21), SizeError);
    EXPECT_THROW(uniform_superposition(-1), SizeError);
    EXPECT_NO_THROW(uniform_superposition(0));
}

TEST(FeatureTable, TableOneLookup) {
    const FeatureTable table({{0, "a"}, {1, "b"}, {2, "c"}, {3, "d"}});
    const OracleSpec o = build_oracle(table, "d");
    EXPECT_EQ(o.target, 3u);
    EXPECT_EQ(o.n_qubits, 2);
}

TEST(FeatureTable, SingleRowAndEightRows) {
    EXPECT_EQ(build_oracle(FeatureTable({{0, "x"}}), "x").target, 0u);
    std::vector<FeatureTable::Entry> rows;
    for (Index i = 0; i < 8; ++i) rows.emplace_back(7 - i, "f" + std::to_string(7 - i));
    const FeatureTable table(rows);
    // Reference: linear scan of the raw rows.
    Index expected = 99;
    for (const auto& [i, f] : rows)
        if (f == "f5") expected = i;
    EXPECT_EQ(build_oracle(table, "f5").target, expected);
    EXPECT_EQ(build_oracle(table, "f5").n_qubits, 3);
}

TEST(FeatureTable, Errors) {
    const FeatureTable table({{0, "a"}, {1, "b"}});
    EXPECT_THROW(build_oracle(table, "z"), NotFoundError);
    EXPECT_THROW(FeatureTable({{0, "a"}, {1, "a"}}), MalformedTableError);
    EXPECT_THROW(FeatureTable({{0, "a"}, {2, "b"}}), MalformedTableError);
    EXPECT_THROW(FeatureTable({{0, "a"}, {0, "b"}}), MalformedTableError);
    EXPECT_THROW(FeatureTable({{0, "a"}, {1, "b"}, {2, "c"}}), MalformedTableError);
}

TEST(FeatureTable, ReadsCsv) {
    std::istringstream csv("index,feature\n0,a\n1,b\n3,d\n2,c\n");
    const FeatureTable table = read_feature_table(csv);
    EXPECT_EQ(table.size(), 4u);
    EXPECT_EQ(build_oracle(table, "c").target, 2u);

    std::istringstream no_header("0,a\n1,b\n");
    EXPECT_THROW(read_feature_table(no_header), MalformedTableError);
    std::istringstream bad_row("index,feature\n0,a\nx,b\n");
    EXPECT_THROW(read_feature_table(bad_row), MalformedTableError);
}

TEST(ApplyOracle, FlipsOnlyTarget) {
    const auto s = apply_oracle(uniform_superposition(2), OracleSpec(2, 2));
    const double expected[] = {0.5, 0.5, -0.5, 0.5};
    for (Index i = 0; i < 4; ++i) EXPECT_NEAR(s[i].real(), expected[i], 1e-15);

    const auto b = apply_oracle(QuantumState::basis(3, 3), OracleSpec(3, 3));
    EXPECT_EQ(b[3], Amplitude(-1.0, 0.0));

    const auto u = apply_oracle(uniform_superposition(3), OracleSpec(3, 3));
    for (Index i = 0; i < 8; ++i) EXPECT_NEAR(u[i].real(), (i == 3 ? -1.0 : 1.0) / std::sqrt(8.0), 1e-15);
}

TEST(ApplyOracle, DimensionMismatch) {
    EXPECT_THROW(apply_oracle(uniform_superposition(3), OracleSpec(1, 2)), DimensionError);
    EXPECT_THROW(OracleSpec(8, 3), IndexError);
}

TEST(ApplyDiffusion, InversionAboutMean) {
    const double h = 1.0 / std::sqrt(2.0);
    const auto s = apply_diffusion(QuantumState::from_amplitudes(1, {{h, 0}, {-h, 0}}));
    EXPECT_NEAR(s[0].real(), -h, 1e-15);
    EXPECT_NEAR(s[1].real(), h, 1e-15);

    const auto u = apply_diffusion(uniform_superposition(4));
    for (const auto& a : u.amplitudes()) EXPECT_NEAR(a.real(), 0.25, 1e-15);

    const auto f = apply_diffusion(QuantumState::from_amplitudes(2, {{0.5, 0}, {0.5, 0}, {-0.5, 0}, {0.5, 0}}));
    const double expected[] = {0.0, 0.0, 1.0, 0.0};
    for (Index i = 0; i < 4; ++i) EXPECT_NEAR(f[i].real(), expected[i], 1e-15);
}

TEST(GroverIterate, KnownSizes) {
    EXPECT_NEAR(success_probability(grover_iterate(uniform_superposition(2), OracleSpec(2, 2)), 2), 1.0, 1e-15);
    EXPECT_NEAR(success_probability(grover_iterate(uniform_superposition(3), OracleSpec(6, 3)), 6), 0.78125, 1e-15);

    const auto s = grover_iterate(uniform_superposition(10), OracleSpec(700, 10));
    const auto [a, b] = reduced_grover(1024.0, 1);
    EXPECT_NEAR(s[700].real(), a, 1e-15);
    EXPECT_NEAR(std::abs(s[700]), 0.0936279296875, 1e-12);
    EXPECT_NEAR(std::abs(s[700]), 0.09366, 5e-5);
    EXPECT_NEAR(success_probability(s, 700), 0.008766189217567444, 1e-12);
}

TEST(GroverIterate, EqualsDiffusionOfOracle) {
    Rng rng(11);
    for (int n = 1; n <= 6; ++n) {
        const QuantumState s = random_state(n, rng);
        const OracleSpec o(rng.below(dimension_of(n)), n);
        const auto lhs = grover_iterate(s, o);
        const auto rhs = apply_diffusion(apply_oracle(s, o));
        for (Index i = 0; i < s.size(); ++i) EXPECT_EQ(lhs[i], rhs[i]);
    }
}

TEST(RunGrover, Examples) {
    const auto zero = run_grover(3, OracleSpec(5, 3), 0);
    EXPECT_NEAR(success_probability(zero, 5), 0.125, 1e-15);
    EXPECT_GE(success_probability(run_grover(10, OracleSpec(123, 10), 25), 123), 0.999);
    EXPECT_NEAR(success_probability(run_grover(2, OracleSpec(1, 2), 1), 1), 1.0, 1e-15);
}

TEST(RunGrover, IterationBound) {
    EXPECT_EQ(grover_iteration_bound(1024), 320u);
    EXPECT_NO_THROW(run_grover(3, OracleSpec(0, 3), 28));
    EXPECT_THROW(run_grover(3, OracleSpec(0, 3), 29), ConfigError);
}

TEST(RunGrover, SingleWomanKeepsCertainty) {
    const auto s = run_grover(0, OracleSpec(0, 0), 1);
    EXPECT_NEAR(success_probability(s, 0), 1.0, 1e-15);
}

TEST(SuccessProbability, Examples) {
    EXPECT_NEAR(success_probability(uniform_superposition(3), 4), 0.125, 1e-15);
    EXPECT_EQ(success_probability(QuantumState::basis(3, 3), 3), 1.0);
    EXPECT_THROW(success_probability(uniform_superposition(3), 8), IndexError);
}

TEST(Measure, BasisStateIsDeterministic) {
    Rng rng(5);
    const auto s = QuantumState::basis(3, 5);
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(measure(s, rng), 5u);
}

TEST(Measure, UniformFrequencies) {
    Rng rng(2024);
    const auto s = uniform_superposition(3);
    std::vector<int> counts(8);
    constexpr int kSamples = 80000;
    for (int i = 0; i < kSamples; ++i) ++counts[measure(s, rng)];
    for (int c : counts) EXPECT_NEAR(c / double(kSamples), 0.125, 0.005);
}

TEST(Measure, AmplifiedTargetFrequency) {
    Rng rng(77);
    const auto s = run_grover(3, OracleSpec(2, 3), 1);
    const auto before = std::vector<Amplitude>(s.amplitudes().begin(), s.amplitudes().end());
    constexpr int kSamples = 100000;
    int hits = 0;
    for (int i = 0; i < kSamples; ++i) hits += measure(s, rng) == 2;
    EXPECT_NEAR(hits / double(kSamples), 0.78125, 0.005);
    for (Index i = 0; i < s.size(); ++i) EXPECT_EQ(s[i], before[i]);
}

TEST(Measure, MatchesBornRuleOnRandomStates) {
    Rng gen(31);
    Rng rng(32);
    constexpr int kSamples = 60000;
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = random_state(3, gen);
        std::vector<int> counts(8);
        for (int i = 0; i < kSamples; ++i) ++counts[measure(s, rng)];
        for (Index i = 0; i < 8; ++i) {
            const double p = std::norm(s[i]);
            EXPECT_NEAR(counts[i] / double(kSamples), p, test_support::binomial_tolerance(p, kSamples) + 1e-12);
        }
    }
}

TEST(Measure, RejectsUnnormalized) {
    Rng rng(1);
    const auto s = QuantumState::from_amplitudes(1, {{1.0, 0}, {0.01, 0}});
    EXPECT_THROW(measure(s, rng), StateError);
}

TEST(ClosedForm, Examples) {
    EXPECT_NEAR(closed_form_probability(8, 1), 0.78125, 1e-15);
    EXPECT_NEAR(closed_form_probability(4, 1), 1.0, 1e-15);
    EXPECT_NEAR(closed_form_probability(1024, 25), 0.9994612447444079, 1e-12);
    EXPECT_NEAR(closed_form_amplitude(1024, 1), 0.0936279296875, 1e-12);
}

TEST(OptimalIterations, Examples) {
    EXPECT_EQ(optimal_iterations(1024), 25u);
    EXPECT_EQ(optimal_iterations(4), 1u);
    EXPECT_EQ(optimal_iterations(2), 0u);
    EXPECT_THROW(optimal_iterations(1), SizeError);
}

TEST(OptimalIterations, MatchesExhaustiveScan) {
    for (Index n = 4; n <= (Index{1} << 16); n *= 2) {
        const auto upper = static_cast<std::uint64_t>(std::ceil(M_PI / (4.0 * std::asin(1.0 / std::sqrt(double(n))))));
        std::uint64_t best = 0;
        for (std::uint64_t k = 0; k <= upper; ++k)
            if (closed_form_probability(n, k) > closed_form_probability(n, best)) best = k;
        EXPECT_EQ(optimal_iterations(n), best) << "N=" << n;
    }
}

// Properties over randomly drawn states and oracles.

TEST(Properties, NormalizationPreserved) {
    Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(8));
        QuantumState s = random_state(n, rng);
        const OracleSpec o(rng.below(dimension_of(n)), n);
        for (int step = 0; step < 20; ++step) {
            switch (rng.below(3)) {
                case 0: s = apply_oracle(std::move(s), o); break;
                case 1: s = apply_diffusion(std::move(s)); break;
                default: s = grover_iterate(std::move(s), o); break;
            }
            ASSERT_NEAR(s.norm_squared(), 1.0, 1e-9);
        }
    }
}

TEST(Properties, OracleAndDiffusionAreInvolutions) {
    Rng rng(202);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(8));
        const QuantumState s = random_state(n, rng);
        const OracleSpec o(rng.below(dimension_of(n)), n);
        const auto twice_oracle = apply_oracle(apply_oracle(s, o), o);
        const auto twice_diffusion = apply_diffusion(apply_diffusion(s));
        for (Index i = 0; i < s.size(); ++i) {
            EXPECT_NEAR(std::abs(twice_oracle[i] - s[i]), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(twice_diffusion[i] - s[i]), 0.0, 1e-12);
        }
    }
}

TEST(Properties, NonTargetAmplitudesStayEqual) {
    Rng rng(303);
    for (int n = 1; n <= 10; ++n) {
        const Index t = rng.below(dimension_of(n));
        const OracleSpec o(t, n);
        QuantumState s = uniform_superposition(n);
        for (int k = 0; k < 30; ++k) {
            s = grover_iterate(std::move(s), o);
            const Amplitude ref = s[t == 0 ? 1 : 0];
            for (Index i = 0; i < s.size(); ++i)
                if (i != t) {
                    ASSERT_NEAR(std::abs(s[i] - ref), 0.0, 1e-12) << "n=" << n << " k=" << k;
                }
        }
    }
}

TEST(Properties, ClosedFormAgreement) {
    Rng rng(404);
    for (int n = 1; n <= 10; ++n) {
        const Index size = dimension_of(n);
        std::vector<Index> targets;
        if (size <= 16) {
            for (Index t = 0; t < size; ++t) targets.push_back(t);
        } else {
            for (int r = 0; r < 3; ++r) targets.push_back(rng.below(size));
        }
        for (Index t : targets) {
            const OracleSpec o(t, n);
            QuantumState s = uniform_superposition(n);
            for (std::uint64_t k = 0; k <= 40; ++k) {
                ASSERT_NEAR(success_probability(s, t), closed_form_probability(size, k), 1e-10)
                    << "N=" << size << " t=" << t << " k=" << k;
                const auto [a, b] = reduced_grover(double(size), int(k));
                ASSERT_NEAR(s[t].real(), a, 1e-10);
                if (k < 40) s = grover_iterate(std::move(s), o);
            }
        }
    }
}

TEST(Properties, DenseMatrixEquivalence) {
    Rng rng(505);
    for (int n = 1; n <= 4; ++n) {
        for (int r = 0; r < 3; ++r) {
            const Index t = rng.below(dimension_of(n));
            for (int k = 0; k <= 6; ++k) {
                if (std::uint64_t(k) > grover_iteration_bound(dimension_of(n))) continue;
                const auto fast = run_grover(n, OracleSpec(t, n), k);
                const auto dense = test_support::dense_grover(n, t, k);
                for (Index i = 0; i < fast.size(); ++i)
                    ASSERT_NEAR(std::abs(fast[i] - dense[i]), 0.0, 1e-12) << "n=" << n << " t=" << t << " k=" << k;
            }
        }
    }
}
