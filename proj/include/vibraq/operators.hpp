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

// Pauli-word operators written as linear combinations of unitaries.
//
// Qubit 0 is the most significant bit of every basis index, so the word
// "XZ" acts as X on the high bit and Z on the low bit (X kron Z).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vibraq/linalg.hpp"

namespace vibraq {

enum class Pauli : std::uint8_t { I, X, Y, Z };

/// A signed tensor product of single-qubit Paulis. The sign is part of the
/// unitary so that LCU weights can stay strictly positive.
class PauliWord {
   public:
    PauliWord() = default;
    PauliWord(std::vector<Pauli> letters, int sign = +1);

    /// Parses "XZY", "-XZY" or "+XZY". Throws ParseError.
    static PauliWord parse(std::string_view text);
    static PauliWord identity(int qubit_count);

    int qubit_count() const { return static_cast<int>(letters_.size()); }
    int sign() const { return sign_; }
    const std::vector<Pauli>& letters() const { return letters_; }
    bool is_identity() const;

    PauliWord negated() const { return PauliWord(letters_, -sign_); }
    std::string str() const;

    /// sign * (P_0 kron P_1 kron ...), unitary and Hermitian.
    Matrix to_dense() const;

    bool operator==(const PauliWord&) const = default;

   private:
    std::vector<Pauli> letters_;
    int sign_ = +1;
};

struct LcuTerm {
    double weight;  // > 0
    PauliWord word;
};

/// sum_l weight_l * word_l, with every weight strictly positive. An operator
/// without terms is the zero operator.
class LcuOperator {
   public:
    explicit LcuOperator(int qubit_count = 1);
    LcuOperator(int qubit_count, std::vector<LcuTerm> terms);

    /// Adds coeff * word; a negative coefficient is folded into the word's
    /// sign and zero coefficients are dropped.
    LcuOperator& add(double coeff, const PauliWord& word);
    LcuOperator& add(double coeff, std::string_view word);

    int qubit_count() const { return qubit_count_; }
    const std::vector<LcuTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

   private:
    int qubit_count_;
    std::vector<LcuTerm> terms_;
};

/// |b| = sum of the weights, accumulated sequentially in term order.
double lcu_weight(const LcuOperator& op);

/// sum_l b_l sign_l P_l. Throws CapExceeded above `cap` qubits.
Matrix to_dense(const LcuOperator& op, int cap = kDefaultDenseCap);

/// LCU of e0 * I - h0: an identity term of weight |e0| (sign of e0 folded in)
/// followed by the negated terms of h0.
LcuOperator shifted_hamiltonian(const LcuOperator& h0, double e0);

/// Pauli-basis expansion of a Hermitian matrix; coefficients with magnitude
/// below `drop_tol` are omitted.
LcuOperator pauli_decompose(const Matrix& hermitian, double drop_tol = 1e-12);

struct EigenSystem {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // columns, orthonormal
    int ground_index = 0;

    int dimension() const { return static_cast<int>(eigenvalues.size()); }
    double ground_energy() const { return eigenvalues(ground_index); }
    Vector ground_vector() const { return eigenvectors.col(ground_index); }
    double spectral_range() const;
};

/// Full dense eigendecomposition of a Hermitian matrix.
EigenSystem eigensystem(const Matrix& hermitian);
EigenSystem eigensystem(const LcuOperator& op, int cap = kDefaultDenseCap);

/// 1e-9 times the spectral range, floored at 1e-12.
double default_degeneracy_tolerance(const EigenSystem& eig);

/// True iff |<E_j|V|E_k>| <= tol for every pair j != k whose eigenvalues
/// coincide within the degeneracy tolerance. Throws DimensionMismatch.
bool validate_perturbation(const LcuOperator& v, const EigenSystem& eig, double tol,
                           std::optional<double> degeneracy_tol = std::nullopt);

}  // namespace vibraq
