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
#include <string>

#include <Eigen/Eigenvalues>

#include "vibraq/errors.hpp"
#include "vibraq/oracle.hpp"

namespace vibraq {

namespace {

Eigen::Index sys_dim(const FkInstance& inst) { return static_cast<Eigen::Index>(dimension_of(inst.system_qubits)); }

void check_instance(const FkInstance& inst) {
    if (inst.length() < 1) throw Error(ErrorCode::PreconditionViolated, "instance needs at least one gate");
    const Eigen::Index d = sys_dim(inst);
    for (const Matrix& u : inst.gates) {
        if (u.rows() != d || u.cols() != d) throw Error(ErrorCode::DimensionMismatch, "gate size mismatch");
        if (unitarity_defect(u) > 1e-9) throw Error(ErrorCode::PreconditionViolated, "gate is not unitary");
    }
}

void check_cap(const FkInstance& padded, int cap) {
    const int total = fk_clock_qubits(padded.length()) + padded.system_qubits;
    if (total > cap) {
        throw Error(ErrorCode::CapExceeded, "clock Hamiltonian on " + std::to_string(total) + " qubits");
    }
}

}  // namespace

FkInstance fk_identity_instance(int length, int system_qubits) {
    FkInstance inst;
    inst.system_qubits = system_qubits;
    const auto d = static_cast<Eigen::Index>(dimension_of(system_qubits));
    inst.gates.assign(static_cast<std::size_t>(length), Matrix::Identity(d, d));
    return inst;
}

int fk_clock_qubits(int length) {
    int c = 0;
    while ((1LL << c) < static_cast<long long>(length) + 1) ++c;
    return c;
}

FkInstance fk_padded(const FkInstance& inst) {
    check_instance(inst);
    FkInstance out = inst;
    const int slots = 1 << fk_clock_qubits(inst.length());
    const Eigen::Index d = sys_dim(inst);
    while (out.length() + 1 < slots) out.gates.push_back(Matrix::Identity(d, d));
    return out;
}

Matrix fk_hamiltonian_dense(const FkInstance& inst, int cap) {
    const FkInstance p = fk_padded(inst);
    check_cap(p, cap);
    const Eigen::Index d = sys_dim(p);
    const Eigen::Index clock = p.length() + 1;
    Matrix h = Matrix::Zero(clock * d, clock * d);
    const Matrix id = Matrix::Identity(d, d);
    for (Eigen::Index t = 1; t < clock; ++t) {
        h.block(t * d, t * d, d, d) += id;
        h.block((t - 1) * d, (t - 1) * d, d, d) += id;
        const Matrix& u = p.gates[static_cast<std::size_t>(t - 1)];
        h.block(t * d, (t - 1) * d, d, d) -= u;
        h.block((t - 1) * d, t * d, d, d) -= u.adjoint();
    }
    return h;
}

LcuOperator feynman_kitaev(const FkInstance& inst, int cap) { return pauli_decompose(fk_hamiltonian_dense(inst, cap)); }

Vector fk_history_basis_state(const FkInstance& inst, int j) {
    const FkInstance p = fk_padded(inst);
    if (j < 0 || j > p.length()) throw Error(ErrorCode::PreconditionViolated, "clock index out of range");
    const Eigen::Index d = sys_dim(p);
    Vector sys = Vector::Zero(d);
    sys(0) = 1.0;
    for (int t = 0; t < j; ++t) sys = p.gates[static_cast<std::size_t>(t)] * sys;
    Vector out = Vector::Zero((p.length() + 1) * d);
    out.segment(j * d, d) = sys;
    return out;
}

Vector fk_history_state(const FkInstance& inst, int k) {
    const FkInstance p = fk_padded(inst);
    const int slots = p.length() + 1;
    Vector out = Vector::Zero(slots * sys_dim(p));
    for (int j = 0; j < slots; ++j) {
        const double phase = 2.0 * std::numbers::pi * j * k / slots;
        out += std::polar(1.0, phase) * fk_history_basis_state(p, j);
    }
    return out / std::sqrt(static_cast<double>(slots));
}

RealVector fk_connected_spectrum(const FkInstance& inst, int cap) {
    const FkInstance p = fk_padded(inst);
    const Matrix h = fk_hamiltonian_dense(p, cap);
    const int slots = p.length() + 1;
    Matrix basis(h.rows(), slots);
    for (int j = 0; j < slots; ++j) basis.col(j) = fk_history_basis_state(p, j);
    const Matrix restricted = basis.adjoint() * h * basis;
    Eigen::SelfAdjointEigenSolver<Matrix> es(restricted, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double fk_expected_eigenvalue(int length, int k) {
    return 2.0 * (1.0 - std::cos(std::numbers::pi * k / (length + 1)));
}

Matrix fk_phase_rotation(int length, int system_qubits) {
    const int clock_qubits = fk_clock_qubits(length);
    const auto slots = static_cast<Eigen::Index>(dimension_of(clock_qubits));
    const auto d = static_cast<Eigen::Index>(dimension_of(system_qubits));
    Matrix r = Matrix::Zero(slots * d, slots * d);
    for (Eigen::Index j = 0; j < slots; ++j) {
        const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / (length + 1));
        r.block(j * d, j * d, d, d) = phase * Matrix::Identity(d, d);
    }
    return r;
}

LcuOperator fk_input_penalty(const FkInstance& inst, int cap) {
    const FkInstance p = fk_padded(inst);
    check_cap(p, cap);
    const auto slots = static_cast<Eigen::Index>(dimension_of(fk_clock_qubits(p.length())));
    const Eigen::Index d = sys_dim(p);
    RealVector diag = RealVector::Zero(slots * d);
    for (Eigen::Index x = 0; x < d; ++x) {
        int ones = 0;
        for (int q = 0; q < p.system_qubits; ++q) ones += static_cast<int>((x >> q) & 1);
        diag(x) = ones;  // clock time 0 occupies the first d entries
    }
    return pauli_decompose(diag.cast<Complex>().asDiagonal().toDenseMatrix());
}

LcuOperator fk_perturbation(const FkInstance& inst, int cap) {
    const FkInstance p = fk_padded(inst);
    check_cap(p, cap);
    const int clock_qubits = fk_clock_qubits(p.length());
    const Matrix r = fk_phase_rotation(p.length(), p.system_qubits);
    // |0><0| on the first system qubit, identity elsewhere.
    const auto slots = static_cast<Eigen::Index>(dimension_of(clock_qubits));
    const Eigen::Index d = sys_dim(p);
    RealVector proj(slots * d);
    for (Eigen::Index i = 0; i < proj.size(); ++i) proj(i) = (i % d) < d / 2 ? 1.0 : 0.0;
    const Matrix pr = r * proj.cast<Complex>().asDiagonal();
    return pauli_decompose(pr + pr.adjoint());
}

}  // namespace vibraq
