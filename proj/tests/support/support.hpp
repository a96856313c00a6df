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

// Test-only generators and reference computations. Everything here is built
// from Kronecker products, SVDs and textbook formulas so that it shares no
// code path with the library routines it checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "vibraq/linalg.hpp"
#include "vibraq/operators.hpp"
#include "vibraq/oracle.hpp"

namespace vibraq::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline std::string random_pauli_string(Rng& rng, int qubits) {
    std::string s;
    for (int q = 0; q < qubits; ++q) s += "IXYZ"[uniform_int(rng, 0, 3)];
    return s;
}

/// `terms` random words with coefficients uniform in [-scale, scale].
inline LcuOperator random_operator(Rng& rng, int qubits, int terms, double scale) {
    LcuOperator op(qubits);
    for (int t = 0; t < terms; ++t) op.add(uniform(rng, -scale, scale), random_pauli_string(rng, qubits));
    return op;
}

inline Matrix pauli_matrix(char p) {
    Matrix m = Matrix::Zero(2, 2);
    switch (p) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: break;
    }
    return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
    return out;
}

/// Dense matrix of a signed Pauli string, left factor on qubit 0.
inline Matrix reference_word(const PauliWord& w) {
    Matrix m = Matrix::Identity(1, 1);
    for (Pauli p : w.letters()) m = kron(m, pauli_matrix("IXYZ"[static_cast<int>(p)]));
    return static_cast<double>(w.sign()) * m;
}

inline Matrix reference_dense(const LcuOperator& op) {
    const auto d = static_cast<Eigen::Index>(dimension_of(op.qubit_count()));
    Matrix m = Matrix::Zero(d, d);
    for (const auto& t : op.terms()) m += t.weight * reference_word(t.word);
    return m;
}

/// Moore-Penrose inverse from a complete orthogonal decomposition.
inline Matrix reference_pinv(const Matrix& m, double tol = 1e-10) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(m.rows(), m.cols());
    cod.setThreshold(tol);
    cod.compute(m);
    return cod.pseudoInverse();
}

struct ReferenceGround {
    double e0 = 0.0;
    double gap = 0.0;
    Vector ground;
    Eigen::VectorXd eigenvalues;
};

inline ReferenceGround reference_ground(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    ReferenceGround g;
    g.eigenvalues = es.eigenvalues();
    g.e0 = g.eigenvalues(0);
    g.gap = g.eigenvalues.size() > 1 ? g.eigenvalues(1) - g.eigenvalues(0) : 1.0;
    g.ground = es.eigenvectors().col(0);
    return g;
}

/// <E0| V (E0 - H0)^+ V |E0> from the SVD-based pseudo-inverse.
inline double reference_k_expectation(const Matrix& h0, const Matrix& v) {
    const ReferenceGround g = reference_ground(h0);
    const Matrix shifted = g.e0 * Matrix::Identity(h0.rows(), h0.cols()) - h0;
    return (g.ground.adjoint() * v * reference_pinv(shifted) * v * g.ground)(0).real();
}

/// Smallest kappa >= 1 with the nonzero spectrum of (E0 - H0)/|a| inside
/// [1/kappa, 1], plus 5% headroom.
inline double reference_kappa(const LcuOperator& h0) {
    const Matrix h = reference_dense(h0);
    const ReferenceGround g = reference_ground(h);
    const double a = lcu_weight(shifted_hamiltonian(h0, g.e0));
    return std::max(1.0, 1.05 * a / g.gap);
}

/// Ground-state energy of H0 + s V.
inline double reference_energy(const Matrix& h0, const Matrix& v, double s) {
    return reference_ground(h0 + s * v).e0;
}

inline double reference_summand(double x) { return x / (std::exp(x) - 1.0) - std::log(1.0 - std::exp(-x)); }

struct RandomInstance {
    LcuOperator h0{1};
    LcuOperator v{1};
    double kappa = 1.0;
    double e0 = 0.0;
    Vector ground;
    double exact_k = 0.0;
};

/// Random H0 (2q + 1 terms) with a well separated ground state and a
/// two-term perturbation of modest weight; kappa <= max_kappa.
inline RandomInstance random_instance(Rng& rng, int qubits, double max_kappa = 1e9, double v_scale = 0.4) {
    for (;;) {
        RandomInstance r;
        r.h0 = random_operator(rng, qubits, 2 * qubits + 1, 1.0);
        r.v = random_operator(rng, qubits, 2, v_scale);
        if (r.h0.empty() || r.v.empty()) continue;
        const Matrix h = reference_dense(r.h0);
        const ReferenceGround g = reference_ground(h);
        const double range = g.eigenvalues(g.eigenvalues.size() - 1) - g.e0;
        if (g.gap < 0.1 * std::max(range, 1e-12)) continue;
        if (!validate_perturbation(r.v, eigensystem(h), 1e-9 * std::max(1.0, lcu_weight(r.v)))) continue;
        r.kappa = reference_kappa(r.h0);
        if (r.kappa > max_kappa) continue;
        r.e0 = g.e0;
        r.ground = g.ground;
        r.exact_k = reference_k_expectation(h, reference_dense(r.v));
        return r;
    }
}

}  // namespace vibraq::testing
