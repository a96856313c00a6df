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

#include "vibraq/oracle.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "vibraq/errors.hpp"

namespace vibraq {

namespace {

double ground_energy_of(const Matrix& h, double degeneracy_tol) {
    const EigenSystem eig = eigensystem(h);
    if (eig.dimension() > 1 && eig.eigenvalues(1) - eig.eigenvalues(0) <= degeneracy_tol) {
        throw Error(ErrorCode::DegenerateGround, "perturbed ground state is degenerate");
    }
    return eig.ground_energy();
}

}  // namespace

EigenSystem ground_state(const LcuOperator& h0, int cap, std::optional<double> degeneracy_tol) {
    EigenSystem eig = eigensystem(h0, cap);
    const double tol = degeneracy_tol.value_or(default_degeneracy_tolerance(eig));
    const double gap = spectral_gap(eig);
    if (gap <= tol) {
        std::ostringstream msg;
        msg << "ground state is degenerate: E1 - E0 = " << gap;
        throw Error(ErrorCode::DegenerateGround, msg.str());
    }
    return eig;
}

double spectral_gap(const EigenSystem& eig) {
    if (eig.dimension() < 2) return std::numeric_limits<double>::infinity();
    return eig.eigenvalues(1) - eig.eigenvalues(0);
}

double second_derivative_sum(const LcuOperator& v, const EigenSystem& eig) {
    if (v.qubit_count() != 0 && static_cast<Eigen::Index>(dimension_of(v.qubit_count())) != eig.dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "perturbation does not match the eigensystem");
    }
    if (v.empty()) return 0.0;
    const Matrix vd = to_dense(v, kDefaultStatevectorCap);
    const Vector coupling = eig.eigenvectors.adjoint() * (vd * eig.ground_vector());
    const double e0 = eig.ground_energy();
    double sum = 0.0;
    for (Eigen::Index k = 0; k < coupling.size(); ++k) {
        if (k == eig.ground_index) continue;
        sum += std::norm(coupling(k)) / (e0 - eig.eigenvalues(k));
    }
    return 2.0 * sum;
}

double finite_difference_d2(const LcuOperator& h0, const LcuOperator& v, double h, int cap) {
    if (!(h > 0.0)) throw Error(ErrorCode::PreconditionViolated, "finite-difference step must be positive");
    if (v.qubit_count() != h0.qubit_count()) {
        throw Error(ErrorCode::DimensionMismatch, "V and H0 act on different qubit counts");
    }
    const Matrix h0d = to_dense(h0, cap);
    const auto dim = h0d.rows();
    const Matrix vd = v.empty() ? Matrix::Zero(dim, dim) : to_dense(v, cap);
    const EigenSystem eig = eigensystem(h0d);
    const double tol = default_degeneracy_tolerance(eig);
    const double e_mid = ground_energy_of(h0d, tol);
    const double e_plus = ground_energy_of(h0d + h * vd, tol);
    const double e_minus = ground_energy_of(h0d - h * vd, tol);
    return (e_plus - 2.0 * e_mid + e_minus) / (h * h);
}

double richardson_d2(const LcuOperator& h0, const LcuOperator& v, double h, int cap) {
    return (4.0 * finite_difference_d2(h0, v, h / 2.0, cap) - finite_difference_d2(h0, v, h, cap)) / 3.0;
}

double default_step(const EigenSystem& eig) {
    const double gap = spectral_gap(eig);
    return std::isfinite(gap) ? 1e-3 * gap : 1e-3;
}

Matrix moore_penrose(const Matrix& hermitian, double kernel_tol) {
    if (hermitian.size() == 0) return hermitian;
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
    const RealVector& lam = es.eigenvalues();
    const double largest = lam.cwiseAbs().maxCoeff();
    RealVector inv(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        inv(i) = std::abs(lam(i)) <= kernel_tol * largest ? 0.0 : 1.0 / lam(i);
    }
    return es.eigenvectors() * inv.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double exact_k_expectation(const LcuOperator& h0, const LcuOperator& v, const EigenSystem& eig, int cap) {
    if (v.qubit_count() != h0.qubit_count()) {
        throw Error(ErrorCode::DimensionMismatch, "V and H0 act on different qubit counts");
    }
    if (v.empty()) return 0.0;
    const Matrix h0d = to_dense(h0, cap);
    const Matrix vd = to_dense(v, cap);
    const auto dim = h0d.rows();
    const Matrix shifted = eig.ground_energy() * Matrix::Identity(dim, dim) - h0d;
    const Vector g = eig.ground_vector();
    const Vector vg = vd * g;
    return (vg.adjoint() * moore_penrose(shifted) * vg)(0).real();
}

}  // namespace vibraq
