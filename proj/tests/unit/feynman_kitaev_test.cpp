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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "support.hpp"
#include "vibraq/errors.hpp"
#include "vibraq/oracle.hpp"

namespace vibraq {
namespace {

using namespace testing;

// Path-graph Laplacian on `nodes` clock states, tensored with I_d.
Matrix reference_identity_clock(int nodes, int d) {
    Matrix lap = Matrix::Zero(nodes, nodes);
    for (int t = 1; t < nodes; ++t) {
        lap(t, t) += 1.0;
        lap(t - 1, t - 1) += 1.0;
        lap(t, t - 1) -= 1.0;
        lap(t - 1, t) -= 1.0;
    }
    return kron(lap, Matrix::Identity(d, d));
}

FkInstance random_circuit(Rng& rng, int length, int n) {
    FkInstance inst;
    inst.system_qubits = n;
    const int d = 1 << n;
    for (int t = 0; t < length; ++t) {
        Matrix m(d, d);
        for (auto& x : m.reshaped()) x = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
        inst.gates.push_back(Eigen::HouseholderQR<Matrix>(m).householderQ() * Matrix::Identity(d, d));
    }
    return inst;
}

TEST(ClockRegister, SizeAndPadding) {
    EXPECT_EQ(fk_clock_qubits(1), 1);
    EXPECT_EQ(fk_clock_qubits(2), 2);
    EXPECT_EQ(fk_clock_qubits(3), 2);
    EXPECT_EQ(fk_clock_qubits(4), 3);
    EXPECT_EQ(fk_clock_qubits(7), 3);
    const FkInstance p = fk_padded(fk_identity_instance(4, 1));
    EXPECT_EQ(p.length(), 7);
    EXPECT_EQ(fk_padded(fk_identity_instance(3, 2)).length(), 3);
}

TEST(ClockHamiltonian, IdentityCircuitIsAPathLaplacian) {
    for (int length : {1, 3, 7}) {
        for (int n : {1, 2}) {
            const Matrix h = fk_hamiltonian_dense(fk_identity_instance(length, n));
            EXPECT_LT((h - reference_identity_clock(length + 1, 1 << n)).cwiseAbs().maxCoeff(), 1e-14);
            EXPECT_LT((reference_dense(feynman_kitaev(fk_identity_instance(length, n))) - h).cwiseAbs().maxCoeff(),
                      1e-12);
        }
    }
}

TEST(ClockHamiltonian, LengthOneSpectrum) {
    const RealVector s = fk_connected_spectrum(fk_identity_instance(1, 1));
    ASSERT_EQ(s.size(), 2);
    EXPECT_NEAR(s(0), 0.0, 1e-14);
    EXPECT_NEAR(s(1), 2.0, 1e-14);
}

TEST(ClockHamiltonian, ConnectedSpectrumOfRandomCircuits) {
    Rng rng(91);
    for (int length : {1, 3, 7}) {
        const FkInstance inst = random_circuit(rng, length, uniform_int(rng, 1, 2));
        const Matrix h = fk_hamiltonian_dense(inst);
        EXPECT_LT(hermitian_defect(h), 1e-13);
        const RealVector s = fk_connected_spectrum(inst);
        ASSERT_EQ(s.size(), length + 1);
        for (int k = 0; k <= length; ++k) EXPECT_NEAR(s(k), fk_expected_eigenvalue(length, k), 1e-12);
        // History basis states are orthonormal and the uniform history is a
        // zero-energy eigenvector.
        Vector uniform_history = Vector::Zero(h.rows());
        for (int j = 0; j <= length; ++j) {
            const Vector bj = fk_history_basis_state(inst, j);
            EXPECT_NEAR(bj.norm(), 1.0, 1e-12);
            if (j > 0) EXPECT_NEAR(std::abs(bj.dot(fk_history_basis_state(inst, j - 1))), 0.0, 1e-12);
            uniform_history += bj;
        }
        uniform_history /= std::sqrt(length + 1.0);
        EXPECT_LT((h * uniform_history).norm(), 1e-12);
        EXPECT_LT((fk_history_state(inst, 0) - uniform_history).norm(), 1e-12);
    }
}

TEST(ClockHamiltonian, ExpectedEigenvalues) {
    EXPECT_NEAR(fk_expected_eigenvalue(1, 1), 2.0, 1e-15);
    EXPECT_NEAR(fk_expected_eigenvalue(3, 2), 2.0, 1e-15);
    EXPECT_NEAR(fk_expected_eigenvalue(3, 0), 0.0, 1e-15);
}

TEST(InputPenalty, SelectsTheAllZeroHistory) {
    Rng rng(92);
    for (int n : {1, 2}) {
        const FkInstance inst = random_circuit(rng, 3, n);
        const Matrix h = fk_hamiltonian_dense(inst) + reference_dense(fk_input_penalty(inst));
        const ReferenceGround g = reference_ground(h);
        EXPECT_NEAR(g.e0, 0.0, 1e-12);
        EXPECT_GT(g.gap, 1e-3);
        EXPECT_NEAR(std::abs(g.ground.dot(fk_history_state(inst, 0))), 1.0, 1e-10);
        EXPECT_NO_THROW(ground_state(pauli_decompose(h)));
    }
}

TEST(PhaseRotation, DiagonalClockPhases) {
    const Matrix r = fk_phase_rotation(3, 1);
    ASSERT_EQ(r.rows(), 8);
    EXPECT_LT(unitarity_defect(r), 1e-14);
    for (int j = 0; j < 4; ++j) {
        const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * j / 4.0);
        EXPECT_NEAR(std::abs(r(2 * j, 2 * j) - phase), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(r(2 * j + 1, 2 * j + 1) - phase), 0.0, 1e-14);
    }
    // Shifts the history momentum by one on identity circuits.
    const FkInstance inst = fk_identity_instance(3, 1);
    EXPECT_LT((r * fk_history_state(inst, 0) - fk_history_state(inst, 1)).norm(), 1e-12);
}

TEST(Perturbation, HermitianAndSizedToTheClock) {
    const FkInstance inst = fk_identity_instance(3, 2);
    const LcuOperator v = fk_perturbation(inst);
    EXPECT_EQ(v.qubit_count(), 4);
    EXPECT_LT(hermitian_defect(reference_dense(v)), 1e-13);
    EXPECT_FALSE(v.empty());
}

TEST(Instance, RejectsOversizedAndMalformed) {
    try {
        fk_hamiltonian_dense(fk_identity_instance(15, 8));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
    }
    FkInstance bad;
    bad.system_qubits = 1;
    bad.gates.push_back(Matrix::Identity(4, 4));
    EXPECT_THROW(fk_hamiltonian_dense(bad), Error);
}

}  // namespace
}  // namespace vibraq
