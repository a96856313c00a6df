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

// Block encodings: LCU prepare/select encodings, the pseudo-inverse of the
// shifted Hamiltonian via an odd polynomial approximation of 1/x, the
// three-factor V A V product, and the curvature operator
// K = V (E0 I - H0)^+ V assembled from them.
//
// Ancilla qubits always precede the system qubits in a realization, and the
// encoded block is the one selected by every ancilla in |0>.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vibraq/linalg.hpp"
#include "vibraq/operators.hpp"
#include "vibraq/simulator.hpp"

namespace vibraq {

namespace oracle_names {
inline constexpr const char* kPrepareV = "P_V";
inline constexpr const char* kSelectV = "U_V";
inline constexpr const char* kPrepareH = "P_H'";
inline constexpr const char* kSelectH = "U_H'";
inline constexpr const char* kStatePrep = "U_0";
inline constexpr const char* kControlledUK = "controlled-U_K";
inline constexpr const char* kWalk = "W";
}  // namespace oracle_names

/// Named oracle invocation counts. Costs compose by addition (sequential
/// use) and scaling (repeated use of a sub-routine).
class QueryLedger {
   public:
    void add(const std::string& oracle, std::uint64_t count);
    QueryLedger& merge(const QueryLedger& other);
    QueryLedger scaled(std::uint64_t factor) const;

    std::uint64_t count(const std::string& oracle) const;
    std::uint64_t total() const;
    const std::map<std::string, std::uint64_t>& counts() const { return counts_; }

   private:
    std::map<std::string, std::uint64_t> counts_;
};

struct BlockEncoding {
    double alpha = 1.0;      // subnormalization
    int ancilla_count = 0;   // realized ancilla qubits
    double epsilon = 0.0;    // || alpha * block - target || <= alpha * epsilon
    Circuit realization{0};  // on ancilla_count + system_qubits qubits
    int system_qubits = 0;
    /// Ancillas a gate-level construction would use; differs from
    /// ancilla_count where the realization is a dense dilation.
    int nominal_ancillas = 0;
    QueryLedger queries;

    int total_qubits() const { return ancilla_count + system_qubits; }
    /// Top-left block extracted by simulating the realization on
    /// |0...0>_anc |j>_sys for every system basis state j.
    Matrix block(int cap = kDefaultDenseCap) const;
};

/// Names used when charging an LCU encoding to the ledger.
struct LcuOracleNames {
    std::string prepare = oracle_names::kPrepareV;
    std::string select = oracle_names::kSelectV;
};

inline int ancillas_for_terms(std::size_t term_count) {
    int a = 0;
    while ((std::size_t{1} << a) < term_count) ++a;
    return a;
}

/// |0>^a -> sum_l sqrt(b_l / |b|) |l>, a = ceil(log2 L).
Circuit prepare_state(const LcuOperator& op);
/// |l>|psi> -> |l> U_l |psi>, identity on padding indices.
Circuit select(const LcuOperator& op);
/// (|b|, ceil(log2 L), 0) encoding P^dagger U P. An operator with no terms
/// gets a one-ancilla encoding of the zero matrix with alpha = 1.
BlockEncoding encode_lcu(const LcuOperator& op, const LcuOracleNames& names = {});

/// Block encoding of a Hermitian matrix with ||target / alpha|| <= 1 by a
/// one-ancilla dilation.
BlockEncoding encode_dense(const Matrix& target, double alpha, double epsilon = 0.0);

/// Odd polynomial g(x) = sum_n c_n T_{2n+1}(x) approximating 1/x on
/// [1/kappa, 1], from the truncated Chebyshev expansion of
/// (1 - (1 - x^2)^B) / x.
struct InversePolynomial {
    std::vector<double> coefficients;  // c_n for T_{2n+1}, n = 0..N
    long long degree_bound = 0;        // N
    long long B = 0;
    double kappa = 1.0;
    double epsilon = 0.0;

    double evaluate(double x) const;
    /// sum_n c_n, which equals g(1).
    double coefficient_sum() const;
    /// sum_n |c_n|, an upper bound on |g| over [-1, 1].
    double abs_coefficient_sum() const;
    /// Largest |g(x) - 1/x| over `points` uniformly spaced points of
    /// [1/kappa, 1].
    double max_deviation(int points = 1000) const;
    int polynomial_degree() const { return static_cast<int>(2 * degree_bound + 1); }
};

/// B = ceil(kappa^2 ln^2(2 kappa / eps)), N = ceil(sqrt(B ln(8 B / eps))).
/// Throws InvalidPrecision unless 0 < eps < 1 and kappa >= 1.
InversePolynomial inverse_coefficients(double kappa, double epsilon);

struct PseudoInverseOptions {
    /// Relative tolerance below which an eigenvalue of H'/|a| counts as
    /// kernel.
    double kernel_tolerance = 1e-10;
    /// Slack allowed on the interval check 1/kappa <= |lambda| <= 1.
    double spectrum_tolerance = 1e-9;
    int cap = kDefaultDenseCap;
};

/// Encoding of (H')^+ obtained by applying the odd polynomial to the
/// eigenvalues of H'/|a|; ||alpha * block - (H')^+|| <= epsilon / |a|.
/// The ledger charges 2N+1 uses of the H' encoding. Throws SpectrumViolation.
BlockEncoding pseudo_inverse(const LcuOperator& h_prime, double kappa, double epsilon,
                             const PseudoInverseOptions& options = {});

/// (lambda_V^2 lambda_A, 2 a_V + a_A, eps) encoding of V A V. Ancilla
/// registers are laid out [V][A][V'] ahead of the system.
BlockEncoding product_vav(const BlockEncoding& v_enc, const BlockEncoding& a_enc);

/// Absolute error of a three-factor product from absolute factor errors,
/// including the cross terms.
double product_error(double alpha, double beta, double gamma, double err_a, double err_b, double err_c);

/// Encoding of K = V (e0 I - h0)^+ V with ||alpha * block - K|| <= epsilon.
/// Throws PerturbationInvalid, SpectrumViolation.
BlockEncoding encode_k(const LcuOperator& v, const LcuOperator& h0, double e0, double kappa, double epsilon,
                       const PseudoInverseOptions& options = {});

}  // namespace vibraq
