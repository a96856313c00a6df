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

// Dense statevector simulation.
//
// Qubit 0 is the most significant bit of the amplitude index. A gate acting
// on qubits {q_0, q_1, ...} sees q_0 as the most significant bit of its own
// local index, so a two-qubit gate listed as {2, 5} has matrix rows ordered
// |q2 q5>.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "vibraq/linalg.hpp"

namespace vibraq {

class StateVector {
   public:
    /// |0...0> on `qubits` qubits.
    explicit StateVector(int qubits);
    /// Takes ownership of amplitudes; throws DimensionMismatch unless the
    /// length is 2^qubits and, when `normalized`, the norm is 1 within 1e-10.
    StateVector(int qubits, Vector amplitudes, bool normalized = true);

    static StateVector basis(int qubits, std::uint64_t index);

    int qubit_count() const { return qubits_; }
    const Vector& amplitudes() const { return amps_; }
    Vector& mutable_amplitudes() { return amps_; }
    bool normalized() const { return normalized_; }
    double norm() const { return amps_.norm(); }

   private:
    int qubits_;
    Vector amps_;
    bool normalized_ = true;
};

class Circuit;

struct DenseGate {
    std::vector<int> qubits;
    Matrix unitary;
};

/// Applies `body` to `targets` (body qubit i -> targets[i]) iff every
/// control qubit is |1>.
struct ControlledGate {
    std::vector<int> controls;
    std::vector<int> targets;
    std::shared_ptr<const Circuit> body;
};

/// Quantum Fourier transform on a register, entries omega^{jk} / sqrt(2^k)
/// with omega = exp(2 pi i / 2^k); `inverse` uses omega^{-jk}.
struct FourierGate {
    std::vector<int> qubits;
    bool inverse = true;
};

using Operation = std::variant<DenseGate, ControlledGate, FourierGate>;

class Circuit {
   public:
    explicit Circuit(int qubit_count);

    int qubit_count() const { return qubit_count_; }
    const std::vector<Operation>& operations() const { return ops_; }
    bool empty() const { return ops_.empty(); }

    /// Throws DimensionMismatch on out-of-range or repeated qubits, or a
    /// matrix whose size does not match.
    Circuit& add_gate(std::vector<int> qubits, Matrix unitary);
    Circuit& add_gate(int qubit, Matrix unitary) { return add_gate(std::vector<int>{qubit}, std::move(unitary)); }
    /// Inlines `body` with its qubit i mapped to targets[i].
    Circuit& append(const Circuit& body, const std::vector<int>& targets);
    Circuit& append(const Circuit& body);
    Circuit& add_controlled(const Circuit& body, std::vector<int> controls, std::vector<int> targets);
    Circuit& add_fourier(std::vector<int> qubits, bool inverse);

    Circuit adjoint() const;

    /// Composed unitary, built column by column. Throws CapExceeded.
    Matrix to_matrix(int cap = kDefaultDenseCap) const;

   private:
    void check_qubits(const std::vector<int>& qubits) const;

    int qubit_count_;
    std::vector<Operation> ops_;
};

/// U |state> for the circuit's composed unitary. Throws DimensionMismatch.
StateVector apply(const Circuit& circuit, const StateVector& state);
/// In-place variant used by the estimation routines.
void apply_in_place(const Circuit& circuit, Vector& amplitudes);

/// `circuit` on the last n qubits of a (k + n)-qubit circuit, applied iff
/// the first k qubits are all |1>.
Circuit controlled(const Circuit& circuit, int control_count);

Circuit inverse_qft(int register_size);
Circuit qft(int register_size);

/// Squared norm of the projection onto `bits` (0/1 per listed qubit).
double outcome_probability(const StateVector& state, std::span<const int> qubits, std::span<const int> bits);

/// Marginal distribution over a register; entry y has the register's first
/// qubit as the most significant bit of y.
std::vector<double> register_distribution(const StateVector& state, std::span<const int> qubits);

namespace gates {
Matrix hadamard();
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
/// Dense QFT matrix on k qubits (for tests and checks).
Matrix fourier_matrix(int k, bool inverse);
}  // namespace gates

}  // namespace vibraq
