// Copyright 2026 The vibraq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "support.hpp"
#include "vibraq/errors.hpp"
#include "vibraq/estimation.hpp"

namespace vibraq {
namespace {

using namespace testing;

constexpr double kPi = std::numbers::pi;

// Hadamard-test instance with an exact encoding of a random Hermitian K.
struct ExactInstance {
    HadamardTestInstance inst;
    double k_exp = 0.0;
    double alpha = 0.0;
};

ExactInstance exact_instance(Rng& rng, int n) {
    const Matrix k = reference_dense(random_operator(rng, n, 3, 1.0));
    Vector psi(static_cast<Eigen::Index>(dimension_of(n)));
    for (auto& x : psi) x = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
    psi /= psi.norm();
    ExactInstance e;
    e.alpha = 1.2 * Eigen::JacobiSVD<Matrix>(k).singularValues()(0) + 1e-3;
    e.k_exp = (psi.adjoint() * k * psi)(0).real();
    e.inst = make_hadamard_instance(encode_dense(k, e.alpha), psi);
    return e;
}

TEST(StatePreparation, FirstColumnIsTheState) {
    Rng rng(51);
    for (int trial = 0; trial < 10; ++trial) {
        Vector psi(8);
        for (auto& x : psi) x = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
        psi /= psi.norm();
        const Matrix u = state_preparation_unitary(psi);
        EXPECT_LT(unitarity_defect(u), 1e-12);
        EXPECT_LT((u.col(0) - psi).norm(), 1e-12);
    }
    EXPECT_THROW(state_preparation_unitary(Vector::Ones(4)), Error);
}

TEST(HadamardTest, ProbabilityFormula) {
    Rng rng(52);
    for (int trial = 0; trial < 20; ++trial) {
        const ExactInstance e = exact_instance(rng, uniform_int(rng, 1, 3));
        EXPECT_NEAR(hadamard_probability(e.inst), 0.5 * (1.0 + e.k_exp / e.alpha), 1e-12);
    }
}

TEST(HadamardTest, CircuitLayout) {
    Rng rng(53);
    const ExactInstance e = exact_instance(rng, 2);
    const Circuit c = hadamard_test_circuit(e.inst);
    EXPECT_EQ(c.qubit_count(), e.inst.total_qubits());
    EXPECT_EQ(e.inst.total_qubits(), 1 + e.inst.u_k.ancilla_count + 2);
}

TEST(WalkOperator, EigenphasesEncodeTheProbability) {
    // On the invariant plane spanned by T|0> the walk has eigenvalues
    // exp(+-2 i theta) with sin^2 theta = P(0).
    Rng rng(54);
    for (int trial = 0; trial < 10; ++trial) {
        const ExactInstance e = exact_instance(rng, uniform_int(rng, 1, 2));
        const double p = hadamard_probability(e.inst);
        const Matrix w = walk_operator(e.inst).to_matrix();
        EXPECT_LT(unitarity_defect(w), 1e-12);
        const Matrix t = hadamard_test_circuit(e.inst).to_matrix();
        const Vector start = t.col(0);
        // <start| W |start> = cos(2 theta) on the plane.
        const Complex overlap = (start.adjoint() * w * start)(0);
        const double theta = std::asin(std::sqrt(p));
        EXPECT_NEAR(std::abs(overlap.real()), std::abs(std::cos(2.0 * theta)), 1e-10);
    }
}

TEST(AmplitudeDistribution, NormalizedAndPeakedAtTheAmplitude) {
    Rng rng(55);
    for (int trial = 0; trial < 6; ++trial) {
        const ExactInstance e = exact_instance(rng, 1);
        const double p = hadamard_probability(e.inst);
        for (int k : {1, 3, 5}) {
            const AmplitudeDistribution d = amplitude_distribution(e.inst, k);
            ASSERT_EQ(d.m, std::uint64_t{1} << (k + 1));
            double total = 0.0;
            for (double q : d.probability) total += q;
            EXPECT_NEAR(total, 1.0, 1e-10);
            EXPECT_GE(d.mass_within(p, amplitude_error_bound(d.m, p, p)), 8.0 / (kPi * kPi) - 1e-9);
            const double y = static_cast<double>(d.most_probable());
            EXPECT_NEAR(d.estimate(d.most_probable()), std::pow(std::sin(kPi * y / static_cast<double>(d.m)), 2),
                        1e-15);
        }
    }
}

TEST(AmplitudeDistribution, RespectsCaps) {
    Rng rng(56);
    const ExactInstance e = exact_instance(rng, 2);
    Limits tight;
    tight.statevector_qubits = e.inst.total_qubits() + 2;
    EXPECT_NO_THROW(amplitude_distribution(e.inst, 1, tight));
    EXPECT_THROW(amplitude_distribution(e.inst, 2, tight), Error);
    EXPECT_THROW(amplitude_distribution(e.inst, -1), Error);
}

TEST(AmplitudeEstimate, ChargesQueries) {
    Rng rng(57);
    const ExactInstance e = exact_instance(rng, 1);
    const auto [p_hat, report] = amplitude_estimate(e.inst, 3);
    EXPECT_EQ(report.m, 16u);
    EXPECT_EQ(report.queries.count(oracle_names::kWalk), 15u);
    EXPECT_EQ(report.queries.count(oracle_names::kStatePrep), 31u);
    EXPECT_EQ(report.queries.count(oracle_names::kControlledUK), 31u);
    EXPECT_NEAR(report.value, e.alpha * (2.0 * p_hat - 1.0), 1e-14);
}

TEST(ErrorBound, Formula) {
    EXPECT_NEAR(amplitude_error_bound(16, 0.3, 0.4), 2.0 * kPi * std::sqrt(0.4 * 0.7) / 16 + kPi * kPi / 256, 1e-15);
}

TEST(GridSize, SmallestSufficientPowerOfTwo) {
    Rng rng(58);
    for (int trial = 0; trial < 200; ++trial) {
        const double lo = uniform(rng, 0.0, 1.0);
        const double hi = uniform(rng, lo, 1.0);
        const double eps0 = std::pow(10.0, uniform(rng, -4, -0.5));
        const std::uint64_t m = grid_size(eps0, lo, hi);
        const double q = hi * (1.0 - lo);
        const double need = kPi * (std::sqrt(q) + std::sqrt(q + eps0)) / eps0;
        EXPECT_GE(m, 4u);
        EXPECT_EQ(m & (m - 1), 0u);
        EXPECT_GE(static_cast<double>(m), need);
        if (m > 4) EXPECT_LT(static_cast<double>(m / 2), need);
        // M at least this large keeps the amplitude bound within eps0.
        EXPECT_LE(amplitude_error_bound(m, lo, hi), eps0 * (1.0 + 1e-12));
    }
}

TEST(RepetitionCount, SmallestOddAboveTheChernoffCount) {
    EXPECT_EQ(repetition_count(0.1), 13);
    for (double delta : {0.5, 0.2, 0.05, 0.01, 1e-3, 1e-6}) {
        const int d = repetition_count(delta);
        const double need = 16.0 * std::log(1.0 / delta) / (8.0 - kPi * kPi / 2.0);
        EXPECT_EQ(d % 2, 1);
        EXPECT_GE(d, need);
        EXPECT_LT(d - 2, need);
    }
}

TEST(MedianAmplify, DeterministicAndChecked) {
    const auto run = [](std::mt19937_64& g) { return std::uniform_real_distribution<double>(0, 1)(g); };
    EXPECT_DOUBLE_EQ(median_amplify(run, 5, 9), median_amplify(run, 5, 9));
    EXPECT_THROW(median_amplify(run, 4, 9), Error);
    EXPECT_THROW(median_amplify(run, 0, 9), Error);
    // Median of d draws from one seeded stream.
    std::mt19937_64 g(9);
    std::vector<double> xs;
    for (int i = 0; i < 5; ++i) xs.push_back(run(g));
    std::sort(xs.begin(), xs.end());
    EXPECT_DOUBLE_EQ(median_amplify(run, 5, 9), xs[2]);
}

TEST(PriorBounds, Validation) {
    EXPECT_NO_THROW((PriorBounds{-0.5, 0.2, 1.0}.validate()));
    EXPECT_THROW((PriorBounds{0.3, 0.2, 1.0}.validate()), Error);
    EXPECT_THROW((PriorBounds{-2.0, 0.2, 1.0}.validate()), Error);
    const PriorBounds b{-0.5, 0.2, 2.0};
    EXPECT_DOUBLE_EQ(b.p_min(), 0.375);
    EXPECT_DOUBLE_EQ(b.p_max(), 0.55);
}

TEST(ExpectationEstimator, MeetsItsGuarantee) {
    Rng rng(59);
    for (int trial = 0; trial < 5; ++trial) {
        const ExactInstance e = exact_instance(rng, 1);
        const PriorBounds bounds{std::max(e.k_exp - 0.2, -e.alpha), std::min(e.k_exp + 0.2, e.alpha), e.alpha};
        const double eps = 0.05;
        const ExpectationEstimator est(e.inst, bounds, eps, 0.05);
        int within = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const EstimateReport r = est.run(seed);
            EXPECT_LE(r.error_bound, eps * (1.0 + 1e-12));
            if (std::abs(r.value - e.k_exp) <= r.error_bound) ++within;
        }
        EXPECT_GE(within, 95);
        EXPECT_EQ(est.run(3).value, est.run(3).value);
        EXPECT_EQ(est.repetitions(), repetition_count(0.05));
    }
}

TEST(ExpectationEstimator, LedgerScalesWithRepetitions) {
    Rng rng(60);
    const ExactInstance e = exact_instance(rng, 1);
    const PriorBounds bounds{-e.alpha, e.alpha, e.alpha};
    const EstimateReport r = estimate_expectation(e.inst, bounds, 0.2, 0.1, 1);
    const std::uint64_t m = r.m;
    EXPECT_EQ(r.queries.count(oracle_names::kWalk), static_cast<std::uint64_t>(r.d) * (m - 1));
    EXPECT_EQ(r.queries.count(oracle_names::kControlledUK), static_cast<std::uint64_t>(r.d) * (2 * (m - 1) + 1));
}

}  // namespace
}  // namespace vibraq
