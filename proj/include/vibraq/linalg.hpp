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

#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace vibraq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Dense realizations above this many qubits are refused with CapExceeded.
inline constexpr int kDefaultDenseCap = 10;
/// Statevector simulation (amplitude estimation registers) may go higher.
inline constexpr int kDefaultStatevectorCap = 24;

struct Limits {
    int dense_qubits = kDefaultDenseCap;
    int statevector_qubits = kDefaultStatevectorCap;
};

inline std::uint64_t dimension_of(int qubits) { return std::uint64_t{1} << qubits; }

/// max |M - M^dagger|
inline double hermitian_defect(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// max |U^dagger U - I|
inline double unitarity_defect(const Matrix& u) {
    if (u.size() == 0) return 0.0;
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

/// Largest singular value.
inline double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

/// Hermitian unitary [[A, S], [S, -A]] with S = sqrt(I - A^2); its top-left
/// block (first qubit in |0>) is A. Requires A Hermitian with norm <= 1.
Matrix hermitian_dilation(const Matrix& contraction);

}  // namespace vibraq
