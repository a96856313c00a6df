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

#include "vibraq/block_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "vibraq/errors.hpp"

namespace vibraq {

namespace {

std::vector<int> range(int start, int count) {
    std::vector<int> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[i] = start + i;
    return v;
}

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

int qubits_for_dimension(Eigen::Index dim) {
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    if ((Eigen::Index{1} << n) != dim) throw Error(ErrorCode::DimensionMismatch, "dimension is not a power of two");
    return n;
}

BlockEncoding zero_encoding(int system_qubits) {
    BlockEncoding be;
    be.alpha = 1.0;
    be.ancilla_count = 1;
    be.nominal_ancillas = 1;
    be.system_qubits = system_qubits;
    be.realization = Circuit(1 + system_qubits);
    be.realization.add_gate(0, gates::pauli_x());
    return be;
}

}  // namespace

void QueryLedger::add(const std::string& oracle, std::uint64_t count) { counts_[oracle] += count; }

QueryLedger& QueryLedger::merge(const QueryLedger& other) {
    for (const auto& [name, n] : other.counts_) counts_[name] += n;
    return *this;
}

QueryLedger QueryLedger::scaled(std::uint64_t factor) const {
    QueryLedger out;
    for (const auto& [name, n] : counts_) out.counts_[name] = n * factor;
    return out;
}

std::uint64_t QueryLedger::count(const std::string& oracle) const {
    auto it = counts_.find(oracle);
    return it == counts_.end() ? 0 : it->second;
}

std::uint64_t QueryLedger::total() const {
    std::uint64_t t = 0;
    for (const auto& [name, n] : counts_) t += n;
    return t;
}

Matrix BlockEncoding::block(int cap) const {
    if (system_qubits > cap) {
        throw Error(ErrorCode::CapExceeded, "block of " + std::to_string(system_qubits) + " system qubits");
    }
    if (total_qubits() > kDefaultStatevectorCap) {
        throw Error(ErrorCode::CapExceeded, "realization of " + std::to_string(total_qubits()) + " qubits");
    }
    const auto sys_dim = static_cast<Eigen::Index>(dimension_of(system_qubits));
    Matrix out(sys_dim, sys_dim);
    Vector state(static_cast<Eigen::Index>(dimension_of(total_qubits())));
    for (Eigen::Index j = 0; j < sys_dim; ++j) {
        state.setZero();
        state(j) = 1.0;  // ancillas are the high bits, all zero
        apply_in_place(realization, state);
        out.col(j) = state.head(sys_dim);
    }
    return out;
}

Circuit prepare_state(const LcuOperator& op) {
    if (op.empty()) throw Error(ErrorCode::PreconditionViolated, "prepare_state needs a non-empty operator");
    const int a = ancillas_for_terms(op.size());
    Circuit c(a);
    if (a == 0) return c;
    const auto dim = static_cast<Eigen::Index>(dimension_of(a));
    const double norm = lcu_weight(op);
    Vector amp = Vector::Zero(dim);
    for (std::size_t l = 0; l < op.size(); ++l) amp(static_cast<Eigen::Index>(l)) = std::sqrt(op.terms()[l].weight / norm);
    amp.normalize();
    // Householder reflection swapping |0> and amp; real and orthogonal.
    Vector u = amp;
    u(0) -= 1.0;
    Matrix h = Matrix::Identity(dim, dim);
    const double un = u.squaredNorm();
    if (un > 1e-30) h -= (2.0 / un) * (u * u.adjoint());
    c.add_gate(range(0, a), std::move(h));
    return c;
}

Circuit select(const LcuOperator& op) {
    if (op.empty()) throw Error(ErrorCode::PreconditionViolated, "select needs a non-empty operator");
    const int a = ancillas_for_terms(op.size());
    const int n = op.qubit_count();
    const auto sys_dim = static_cast<Eigen::Index>(dimension_of(n));
    const auto blocks = static_cast<Eigen::Index>(dimension_of(a));
    Matrix u = Matrix::Zero(blocks * sys_dim, blocks * sys_dim);
    for (Eigen::Index l = 0; l < blocks; ++l) {
        u.block(l * sys_dim, l * sys_dim, sys_dim, sys_dim) =
            l < static_cast<Eigen::Index>(op.size()) ? op.terms()[l].word.to_dense()
                                                     : Matrix::Identity(sys_dim, sys_dim);
    }
    Circuit c(a + n);
    c.add_gate(range(0, a + n), std::move(u));
    return c;
}

BlockEncoding encode_lcu(const LcuOperator& op, const LcuOracleNames& names) {
    const int n = op.qubit_count();
    if (op.empty()) return zero_encoding(n);
    const int a = ancillas_for_terms(op.size());
    const Circuit prep = prepare_state(op);

    BlockEncoding be;
    be.alpha = lcu_weight(op);
    be.ancilla_count = a;
    be.nominal_ancillas = a;
    be.system_qubits = n;
    be.realization = Circuit(a + n);
    be.realization.append(prep, range(0, a));
    be.realization.append(select(op));
    be.realization.append(prep.adjoint(), range(0, a));
    be.queries.add(names.prepare, 2);
    be.queries.add(names.select, 1);
    return be;
}

BlockEncoding encode_dense(const Matrix& target, double alpha, double epsilon) {
    if (!(alpha > 0.0)) throw Error(ErrorCode::PreconditionViolated, "alpha must be positive");
    const int n = qubits_for_dimension(target.rows());
    const Matrix scaled = target / alpha;
    if (hermitian_defect(scaled) > 1e-10) throw Error(ErrorCode::PreconditionViolated, "target is not Hermitian");
    if (operator_norm(scaled) > 1.0 + 1e-9) {
        throw Error(ErrorCode::PreconditionViolated, "target / alpha has norm above 1");
    }
    BlockEncoding be;
    be.alpha = alpha;
    be.epsilon = epsilon;
    be.ancilla_count = 1;
    be.nominal_ancillas = 1;
    be.system_qubits = n;
    be.realization = Circuit(1 + n);
    be.realization.add_gate(range(0, 1 + n), hermitian_dilation(scaled));
    return be;
}

BlockEncoding pseudo_inverse(const LcuOperator& h_prime, double kappa, double epsilon,
                             const PseudoInverseOptions& options) {
    const int n = h_prime.qubit_count();
    const double a_norm = lcu_weight(h_prime);
    const InversePolynomial poly = inverse_coefficients(kappa, epsilon);
    if (a_norm == 0.0) return zero_encoding(n);

    const Matrix scaled = to_dense(h_prime, options.cap) / a_norm;
    Eigen::SelfAdjointEigenSolver<Matrix> es(scaled);
    const RealVector& lam = es.eigenvalues();
    const double largest = lam.cwiseAbs().maxCoeff();
    RealVector transformed(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        const double mag = std::abs(lam(i));
        const bool kernel = mag <= options.kernel_tolerance * largest;
        if (!kernel && (mag < 1.0 / kappa - options.spectrum_tolerance || mag > 1.0 + options.spectrum_tolerance)) {
            std::ostringstream msg;
            msg << "eigenvalue " << lam(i) << " of H'/|a| lies outside [1/kappa, 1] for kappa = " << kappa;
            throw Error(ErrorCode::SpectrumViolation, msg.str());
        }
        transformed(i) = poly.evaluate(lam(i));
    }
    const double s = poly.abs_coefficient_sum();
    const Matrix a = es.eigenvectors() * (transformed / s).cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();

    BlockEncoding be;
    be.alpha = s / a_norm;
    be.epsilon = epsilon / s;  // absolute error epsilon / |a|
    be.ancilla_count = 1;
    be.nominal_ancillas = ancillas_for_terms(h_prime.size()) + 1;
    be.system_qubits = n;
    be.realization = Circuit(1 + n);
    be.realization.add_gate(range(0, 1 + n), hermitian_dilation(a));
    const auto uses = static_cast<std::uint64_t>(poly.polynomial_degree());
    be.queries.add(oracle_names::kSelectH, uses);
    be.queries.add(oracle_names::kPrepareH, 2 * uses);
    return be;
}

double product_error(double alpha, double beta, double gamma, double err_a, double err_b, double err_c) {
    return (alpha + err_a) * (beta + err_b) * (gamma + err_c) - alpha * beta * gamma;
}

BlockEncoding product_vav(const BlockEncoding& v_enc, const BlockEncoding& a_enc) {
    if (v_enc.system_qubits != a_enc.system_qubits) {
        throw Error(ErrorCode::DimensionMismatch, "factors act on different system sizes");
    }
    const int av = v_enc.ancilla_count;
    const int aa = a_enc.ancilla_count;
    const int n = v_enc.system_qubits;
    const auto sys = range(2 * av + aa, n);

    BlockEncoding be;
    be.system_qubits = n;
    be.ancilla_count = 2 * av + aa;
    be.nominal_ancillas = 2 * v_enc.nominal_ancillas + a_enc.nominal_ancillas;
    be.alpha = v_enc.alpha * v_enc.alpha * a_enc.alpha;
    const double err_v = v_enc.alpha * v_enc.epsilon;
    const double err_a = a_enc.alpha * a_enc.epsilon;
    be.epsilon = product_error(v_enc.alpha, a_enc.alpha, v_enc.alpha, err_v, err_a, err_v) / be.alpha;
    be.realization = Circuit(be.ancilla_count + n);
    be.realization.append(v_enc.realization, concat(range(0, av), sys));
    be.realization.append(a_enc.realization, concat(range(av, aa), sys));
    be.realization.append(v_enc.realization, concat(range(av + aa, av), sys));
    be.queries.merge(v_enc.queries).merge(a_enc.queries).merge(v_enc.queries);
    return be;
}

BlockEncoding encode_k(const LcuOperator& v, const LcuOperator& h0, double e0, double kappa, double epsilon,
                       const PseudoInverseOptions& options) {
    if (v.qubit_count() != h0.qubit_count()) {
        throw Error(ErrorCode::DimensionMismatch, "V and H0 act on different qubit counts");
    }
    if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidPrecision, "epsilon must be positive");
    const int n = h0.qubit_count();
    const EigenSystem eig = eigensystem(h0, options.cap);
    const double tol = 1e-9 * std::max(1.0, lcu_weight(v));
    if (!validate_perturbation(v, eig, tol)) {
        throw Error(ErrorCode::PerturbationInvalid, "V couples degenerate eigenstates of H0");
    }
    const BlockEncoding v_enc = encode_lcu(v);
    if (v.empty()) return product_vav(v_enc, encode_dense(Matrix::Zero(static_cast<Eigen::Index>(dimension_of(n)), static_cast<Eigen::Index>(dimension_of(n))), 1.0));

    const LcuOperator h_prime = shifted_hamiltonian(h0, e0);
    const double b = v_enc.alpha;
    const double a_norm = lcu_weight(h_prime);
    // ||V (A - A~) V|| <= |b|^2 ||A - A~|| and ||A - A~|| <= eps_poly / |a|.
    const double eps_poly = std::min(epsilon * a_norm / (b * b), 0.5);
    const BlockEncoding a_enc = pseudo_inverse(h_prime, kappa, eps_poly, options);
    return product_vav(v_enc, a_enc);
}

}  // namespace vibraq
