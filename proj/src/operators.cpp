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

#include "vibraq/operators.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "vibraq/errors.hpp"

namespace vibraq {

namespace {

// A Pauli word maps basis row r to column r ^ flip_mask with a phase.
struct SparsePauli {
    std::uint64_t flip_mask = 0;
    std::vector<Pauli> letters;
    int sign = 1;

    Complex phase(std::uint64_t row) const {
        const int n = static_cast<int>(letters.size());
        Complex ph = static_cast<double>(sign);
        for (int q = 0; q < n; ++q) {
            const bool bit = (row >> (n - 1 - q)) & 1u;
            switch (letters[q]) {
                case Pauli::I:
                case Pauli::X: break;
                case Pauli::Y: ph *= bit ? Complex(0, 1) : Complex(0, -1); break;
                case Pauli::Z:
                    if (bit) ph = -ph;
                    break;
            }
        }
        return ph;
    }
};

// The Y entries: <0|Y|1> = -i and <1|Y|0> = +i, i.e. row bit 0 picks -i.
SparsePauli sparse(const PauliWord& word) {
    SparsePauli sp;
    sp.letters = word.letters();
    sp.sign = word.sign();
    const int n = word.qubit_count();
    for (int q = 0; q < n; ++q) {
        if (sp.letters[q] == Pauli::X || sp.letters[q] == Pauli::Y) {
            sp.flip_mask |= std::uint64_t{1} << (n - 1 - q);
        }
    }
    return sp;
}

void check_cap(int qubits, int cap) {
    if (qubits > cap) {
        throw Error(ErrorCode::CapExceeded, std::to_string(qubits) + " qubits exceeds the dense cap of " +
                                                std::to_string(cap));
    }
}

}  // namespace

Matrix hermitian_dilation(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    const RealVector& lam = es.eigenvalues();
    RealVector s(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) s(i) = std::sqrt(std::max(0.0, 1.0 - lam(i) * lam(i)));
    const Matrix root = es.eigenvectors() * s.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    const Eigen::Index d = a.rows();
    Matrix u(2 * d, 2 * d);
    u.topLeftCorner(d, d) = a;
    u.topRightCorner(d, d) = root;
    u.bottomLeftCorner(d, d) = root;
    u.bottomRightCorner(d, d) = -a;
    return u;
}

PauliWord::PauliWord(std::vector<Pauli> letters, int sign) : letters_(std::move(letters)), sign_(sign) {
    if (sign_ != 1 && sign_ != -1) throw Error(ErrorCode::ParseError, "Pauli word sign must be +1 or -1");
    if (letters_.empty()) throw Error(ErrorCode::ParseError, "Pauli word must act on at least one qubit");
}

PauliWord PauliWord::parse(std::string_view text) {
    int sign = 1;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        sign = text.front() == '-' ? -1 : 1;
        text.remove_prefix(1);
    }
    std::vector<Pauli> letters;
    letters.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case 'I': letters.push_back(Pauli::I); break;
            case 'X': letters.push_back(Pauli::X); break;
            case 'Y': letters.push_back(Pauli::Y); break;
            case 'Z': letters.push_back(Pauli::Z); break;
            default:
                throw Error(ErrorCode::ParseError, "invalid Pauli letter '" + std::string(1, c) + "'");
        }
    }
    return PauliWord(std::move(letters), sign);
}

PauliWord PauliWord::identity(int qubit_count) {
    return PauliWord(std::vector<Pauli>(static_cast<std::size_t>(qubit_count), Pauli::I));
}

bool PauliWord::is_identity() const {
    return sign_ > 0 && std::all_of(letters_.begin(), letters_.end(), [](Pauli p) { return p == Pauli::I; });
}

std::string PauliWord::str() const {
    std::string out = sign_ < 0 ? "-" : "";
    for (Pauli p : letters_) out += "IXYZ"[static_cast<int>(p)];
    return out;
}

Matrix PauliWord::to_dense() const {
    const auto sp = sparse(*this);
    const std::uint64_t dim = dimension_of(qubit_count());
    Matrix m = Matrix::Zero(dim, dim);
    for (std::uint64_t r = 0; r < dim; ++r) m(r, r ^ sp.flip_mask) = sp.phase(r);
    return m;
}

LcuOperator::LcuOperator(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 1) throw Error(ErrorCode::DimensionMismatch, "operator needs at least one qubit");
}

LcuOperator::LcuOperator(int qubit_count, std::vector<LcuTerm> terms) : LcuOperator(qubit_count) {
    for (auto& t : terms) {
        if (!(t.weight > 0.0) || !std::isfinite(t.weight)) {
            throw Error(ErrorCode::ParseError, "LCU weights must be finite and strictly positive");
        }
        if (t.word.qubit_count() != qubit_count) {
            throw Error(ErrorCode::DimensionMismatch, "term " + t.word.str() + " does not act on " +
                                                          std::to_string(qubit_count) + " qubits");
        }
    }
    terms_ = std::move(terms);
}

LcuOperator& LcuOperator::add(double coeff, const PauliWord& word) {
    if (!std::isfinite(coeff)) throw Error(ErrorCode::ParseError, "non-finite coefficient");
    if (word.qubit_count() != qubit_count_) {
        throw Error(ErrorCode::DimensionMismatch,
                    "term " + word.str() + " does not act on " + std::to_string(qubit_count_) + " qubits");
    }
    if (coeff == 0.0) return *this;
    terms_.push_back({std::abs(coeff), coeff < 0 ? word.negated() : word});
    return *this;
}

LcuOperator& LcuOperator::add(double coeff, std::string_view word) { return add(coeff, PauliWord::parse(word)); }

double lcu_weight(const LcuOperator& op) {
    double sum = 0.0;
    for (const auto& t : op.terms()) sum += t.weight;
    return sum;
}

Matrix to_dense(const LcuOperator& op, int cap) {
    check_cap(op.qubit_count(), cap);
    const std::uint64_t dim = dimension_of(op.qubit_count());
    Matrix m = Matrix::Zero(dim, dim);
    for (const auto& t : op.terms()) {
        const auto sp = sparse(t.word);
        for (std::uint64_t r = 0; r < dim; ++r) m(r, r ^ sp.flip_mask) += t.weight * sp.phase(r);
    }
    return m;
}

LcuOperator shifted_hamiltonian(const LcuOperator& h0, double e0) {
    if (!std::isfinite(e0)) throw Error(ErrorCode::PreconditionViolated, "e0 must be finite");
    LcuOperator out(h0.qubit_count());
    out.add(e0, PauliWord::identity(h0.qubit_count()));
    for (const auto& t : h0.terms()) out.add(t.weight, t.word.negated());
    return out;
}

LcuOperator pauli_decompose(const Matrix& hermitian, double drop_tol) {
    const auto dim = static_cast<std::uint64_t>(hermitian.rows());
    int n = 0;
    while ((std::uint64_t{1} << n) < dim) ++n;
    if (dimension_of(n) != dim || hermitian.cols() != hermitian.rows() || n == 0) {
        throw Error(ErrorCode::DimensionMismatch, "matrix dimension is not a power of two");
    }
    LcuOperator out(n);
    const std::uint64_t words = std::uint64_t{1} << (2 * n);
    std::vector<Pauli> letters(static_cast<std::size_t>(n));
    for (std::uint64_t code = 0; code < words; ++code) {
        for (int q = 0; q < n; ++q) letters[q] = static_cast<Pauli>((code >> (2 * (n - 1 - q))) & 3u);
        const PauliWord word(letters);
        const auto sp = sparse(word);
        // Tr(P M) = sum_r P[r, r^f] M[r^f, r]
        Complex tr = 0.0;
        for (std::uint64_t r = 0; r < dim; ++r) tr += sp.phase(r) * hermitian(r ^ sp.flip_mask, r);
        const double c = tr.real() / static_cast<double>(dim);
        if (std::abs(c) > drop_tol) out.add(c, word);
    }
    return out;
}

double EigenSystem::spectral_range() const {
    if (eigenvalues.size() == 0) return 0.0;
    return eigenvalues(eigenvalues.size() - 1) - eigenvalues(0);
}

EigenSystem eigensystem(const Matrix& hermitian) {
    if (hermitian.rows() != hermitian.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::PreconditionViolated, "eigensolver failed");
    // Eigen returns eigenvalues in ascending order.
    return EigenSystem{es.eigenvalues(), es.eigenvectors(), 0};
}

EigenSystem eigensystem(const LcuOperator& op, int cap) { return eigensystem(to_dense(op, cap)); }

double default_degeneracy_tolerance(const EigenSystem& eig) { return std::max(1e-9 * eig.spectral_range(), 1e-12); }

bool validate_perturbation(const LcuOperator& v, const EigenSystem& eig, double tol,
                           std::optional<double> degeneracy_tol) {
    if (static_cast<std::int64_t>(dimension_of(v.qubit_count())) != eig.dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "perturbation and eigensystem dimensions differ");
    }
    const double deg = degeneracy_tol.value_or(default_degeneracy_tolerance(eig));
    const Matrix vm = to_dense(v, v.qubit_count());
    const Matrix elements = eig.eigenvectors.adjoint() * vm * eig.eigenvectors;
    const int d = eig.dimension();
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            if (std::abs(eig.eigenvalues(j) - eig.eigenvalues(k)) <= deg && std::abs(elements(j, k)) > tol) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace vibraq
