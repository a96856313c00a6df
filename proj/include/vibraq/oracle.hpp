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

// Exact classical reference values computed by dense diagonalization, and
// the Feynman-Kitaev clock Hamiltonian used as an analytic test instance.

#pragma once

#include <optional>
#include <vector>

#include "vibraq/linalg.hpp"
#include "vibraq/operators.hpp"

namespace vibraq {

/// Sorted eigendecomposition of h0. Throws DegenerateGround when
/// E1 - E0 <= tol (default: default_degeneracy_tolerance), CapExceeded.
EigenSystem ground_state(const LcuOperator& h0, int cap = kDefaultDenseCap,
                         std::optional<double> degeneracy_tol = std::nullopt);

/// E1 - E0 of a sorted eigensystem, or +inf for a 1-dimensional space.
double spectral_gap(const EigenSystem& eig);

/// 2 sum_{k != 0} |<E_k|V|E_0>|^2 / (E_0 - E_k).
double second_derivative_sum(const LcuOperator& v, const EigenSystem& eig);

/// (E0(h) - 2 E0(0) + E0(-h)) / h^2 for H0 + s V. Throws DegenerateGround,
/// PreconditionViolated for h <= 0.
double finite_difference_d2(const LcuOperator& h0, const LcuOperator& v, double h, int cap = kDefaultDenseCap);

/// (4 fd(h/2) - fd(h)) / 3, cancelling the h^2 term.
double richardson_d2(const LcuOperator& h0, const LcuOperator& v, double h, int cap = kDefaultDenseCap);

/// 1e-3 times the spectral gap.
double default_step(const EigenSystem& eig);

/// Eigenvalue inversion with |lambda| <= kernel_tol * max |lambda| treated
/// as zero.
Matrix moore_penrose(const Matrix& hermitian, double kernel_tol = 1e-10);

/// <E0| V^dagger (E0 I - H0)^+ V |E0>.
double exact_k_expectation(const LcuOperator& h0, const LcuOperator& v, const EigenSystem& eig,
                           int cap = kDefaultDenseCap);

/// Gates U_1..U_L of a circuit on `system_qubits` qubits; U_0 = I.
struct FkInstance {
    int system_qubits = 1;
    std::vector<Matrix> gates;  // each 2^n x 2^n, unitary

    int length() const { return static_cast<int>(gates.size()); }
};

/// All-identity instance of length L.
FkInstance fk_identity_instance(int length, int system_qubits);

/// ceil(log2(L + 1)).
int fk_clock_qubits(int length);

/// Gate list extended with identities so that L + 1 fills the clock
/// register.
FkInstance fk_padded(const FkInstance& inst);

/// Dense clock Hamiltonian on clock (high qubits) kron system:
/// sum_t (|t><t| + |t-1><t-1|) kron I - (|t><t-1| kron U_t + h.c.).
/// The instance is padded first. Throws CapExceeded.
Matrix fk_hamiltonian_dense(const FkInstance& inst, int cap = kDefaultDenseCap);

/// Pauli expansion of fk_hamiltonian_dense.
LcuOperator feynman_kitaev(const FkInstance& inst, int cap = kDefaultDenseCap);

/// Clock-history state |j> kron U_j ... U_1 |0>, j = 0..L of the padded
/// instance.
Vector fk_history_basis_state(const FkInstance& inst, int j);

/// (L+1)^{-1/2} sum_j exp(2 pi i j k / (L + 1)) |j> U_j ... U_1 |0>.
Vector fk_history_state(const FkInstance& inst, int k);

/// Eigenvalues of H_FK restricted to the span of the history basis states,
/// ascending.
RealVector fk_connected_spectrum(const FkInstance& inst, int cap = kDefaultDenseCap);

/// 2 (1 - cos(pi k / (L + 1))).
double fk_expected_eigenvalue(int length, int k);

/// diag_j exp(2 pi i j / (L + 1)) on the clock, kron identity on n qubits.
/// The clock has fk_clock_qubits(L) qubits.
Matrix fk_phase_rotation(int length, int system_qubits);

/// sum_i |0><0|_clock kron |1><1|_i: penalizes nonzero inputs at clock time
/// 0, leaving the history state of |0...0> as the unique ground state.
LcuOperator fk_input_penalty(const FkInstance& inst, int cap = kDefaultDenseCap);

/// R_+ (I kron |0><0|_{first system qubit} kron I) + h.c.
LcuOperator fk_perturbation(const FkInstance& inst, int cap = kDefaultDenseCap);

}  // namespace vibraq
