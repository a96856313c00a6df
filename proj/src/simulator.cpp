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

#include "vibraq/simulator.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "vibraq/errors.hpp"

namespace vibraq {

namespace {

std::uint64_t bit_of(int qubit, int total) { return std::uint64_t{1} << (total - 1 - qubit); }

// offsets[j] places local index j (first listed qubit = MSB) into the
// global index space.
std::vector<std::uint64_t> local_offsets(const std::vector<int>& global_qubits, int total) {
    const int m = static_cast<int>(global_qubits.size());
    std::vector<std::uint64_t> offsets(dimension_of(m), 0);
    for (std::uint64_t j = 0; j < offsets.size(); ++j) {
        std::uint64_t off = 0;
        for (int b = 0; b < m; ++b) {
            if ((j >> (m - 1 - b)) & 1u) off |= bit_of(global_qubits[b], total);
        }
        offsets[j] = off;
    }
    return offsets;
}

// Calls fn(base) for every index whose target bits are zero and whose
// control bits are all one.
template <typename Fn>
void for_each_base(int total, std::uint64_t target_mask, std::uint64_t control_mask, Fn&& fn) {
    const std::uint64_t all = dimension_of(total) - 1;
    const std::uint64_t free = all & ~target_mask & ~control_mask;
    std::uint64_t s = 0;
    do {
        fn(s | control_mask);
        s = (s - free) & free;
    } while (s != 0);
}

void fft_in_place(std::vector<Complex>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double sign = inverse ? -1.0 : 1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex w = std::polar(1.0, ang * static_cast<double>(k));
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& x : a) x *= scale;
}

std::vector<int> remap(const std::vector<int>& qubits, const std::vector<int>& map) {
    std::vector<int> out;
    out.reserve(qubits.size());
    for (int q : qubits) out.push_back(map[q]);
    return out;
}

std::uint64_t mask_of(const std::vector<int>& global_qubits, int total) {
    std::uint64_t m = 0;
    for (int q : global_qubits) m |= bit_of(q, total);
    return m;
}

void run(const Circuit& circuit, Vector& amps, int total, const std::vector<int>& map, std::uint64_t control_mask);

void run_dense(const DenseGate& g, Vector& amps, int total, const std::vector<int>& map, std::uint64_t control_mask) {
    const auto global = remap(g.qubits, map);
    const auto offsets = local_offsets(global, total);
    const std::uint64_t target_mask = mask_of(global, total);
    const auto dim = static_cast<Eigen::Index>(offsets.size());
    Vector in(dim), out(dim);
    for_each_base(total, target_mask, control_mask, [&](std::uint64_t base) {
        for (Eigen::Index j = 0; j < dim; ++j) in(j) = amps(base | offsets[j]);
        out.noalias() = g.unitary * in;
        for (Eigen::Index j = 0; j < dim; ++j) amps(base | offsets[j]) = out(j);
    });
}

void run_fourier(const FourierGate& g, Vector& amps, int total, const std::vector<int>& map,
                 std::uint64_t control_mask) {
    const auto global = remap(g.qubits, map);
    const auto offsets = local_offsets(global, total);
    const std::uint64_t target_mask = mask_of(global, total);
    std::vector<Complex> buf(offsets.size());
    for_each_base(total, target_mask, control_mask, [&](std::uint64_t base) {
        for (std::size_t j = 0; j < buf.size(); ++j) buf[j] = amps(base | offsets[j]);
        fft_in_place(buf, g.inverse);
        for (std::size_t j = 0; j < buf.size(); ++j) amps(base | offsets[j]) = buf[j];
    });
}

void run(const Circuit& circuit, Vector& amps, int total, const std::vector<int>& map, std::uint64_t control_mask) {
    for (const auto& op : circuit.operations()) {
        if (const auto* d = std::get_if<DenseGate>(&op)) {
            run_dense(*d, amps, total, map, control_mask);
        } else if (const auto* f = std::get_if<FourierGate>(&op)) {
            run_fourier(*f, amps, total, map, control_mask);
        } else {
            const auto& c = std::get<ControlledGate>(op);
            const auto inner_map = remap(c.targets, map);
            run(*c.body, amps, total, inner_map, control_mask | mask_of(remap(c.controls, map), total));
        }
    }
}

std::vector<int> iota_from(int start, int count) {
    std::vector<int> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[i] = start + i;
    return v;
}

}  // namespace

StateVector::StateVector(int qubits) : qubits_(qubits), amps_(Vector::Zero(dimension_of(qubits))) {
    if (qubits < 0 || qubits > 40) throw Error(ErrorCode::DimensionMismatch, "invalid qubit count");
    amps_(0) = 1.0;
}

StateVector::StateVector(int qubits, Vector amplitudes, bool normalized)
    : qubits_(qubits), amps_(std::move(amplitudes)), normalized_(normalized) {
    if (qubits < 0 || static_cast<std::uint64_t>(amps_.size()) != dimension_of(qubits)) {
        throw Error(ErrorCode::DimensionMismatch, "amplitude count does not match 2^qubits");
    }
    if (normalized && std::abs(amps_.norm() - 1.0) > 1e-10) {
        throw Error(ErrorCode::DimensionMismatch, "state is not normalized");
    }
}

StateVector StateVector::basis(int qubits, std::uint64_t index) {
    Vector v = Vector::Zero(dimension_of(qubits));
    v(index) = 1.0;
    return StateVector(qubits, std::move(v));
}

Circuit::Circuit(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 0) throw Error(ErrorCode::DimensionMismatch, "negative qubit count");
}

void Circuit::check_qubits(const std::vector<int>& qubits) const {
    std::set<int> seen;
    for (int q : qubits) {
        if (q < 0 || q >= qubit_count_) {
            throw Error(ErrorCode::DimensionMismatch, "qubit index " + std::to_string(q) + " out of range");
        }
        if (!seen.insert(q).second) {
            throw Error(ErrorCode::DimensionMismatch, "qubit " + std::to_string(q) + " listed twice");
        }
    }
}

Circuit& Circuit::add_gate(std::vector<int> qubits, Matrix unitary) {
    check_qubits(qubits);
    const auto dim = static_cast<Eigen::Index>(dimension_of(static_cast<int>(qubits.size())));
    if (unitary.rows() != dim || unitary.cols() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "gate matrix does not match its qubit count");
    }
    ops_.emplace_back(DenseGate{std::move(qubits), std::move(unitary)});
    return *this;
}

Circuit& Circuit::append(const Circuit& body, const std::vector<int>& targets) {
    if (static_cast<int>(targets.size()) != body.qubit_count()) {
        throw Error(ErrorCode::DimensionMismatch, "target list does not match sub-circuit width");
    }
    check_qubits(targets);
    for (const auto& op : body.operations()) {
        if (const auto* d = std::get_if<DenseGate>(&op)) {
            ops_.emplace_back(DenseGate{remap(d->qubits, targets), d->unitary});
        } else if (const auto* f = std::get_if<FourierGate>(&op)) {
            ops_.emplace_back(FourierGate{remap(f->qubits, targets), f->inverse});
        } else {
            const auto& c = std::get<ControlledGate>(op);
            ops_.emplace_back(ControlledGate{remap(c.controls, targets), remap(c.targets, targets), c.body});
        }
    }
    return *this;
}

Circuit& Circuit::append(const Circuit& body) { return append(body, iota_from(0, body.qubit_count())); }

Circuit& Circuit::add_controlled(const Circuit& body, std::vector<int> controls, std::vector<int> targets) {
    if (static_cast<int>(targets.size()) != body.qubit_count()) {
        throw Error(ErrorCode::DimensionMismatch, "target list does not match sub-circuit width");
    }
    std::vector<int> all = controls;
    all.insert(all.end(), targets.begin(), targets.end());
    check_qubits(all);
    ops_.emplace_back(
        ControlledGate{std::move(controls), std::move(targets), std::make_shared<const Circuit>(body)});
    return *this;
}

Circuit& Circuit::add_fourier(std::vector<int> qubits, bool inverse) {
    if (qubits.empty()) throw Error(ErrorCode::DimensionMismatch, "Fourier register must be non-empty");
    check_qubits(qubits);
    ops_.emplace_back(FourierGate{std::move(qubits), inverse});
    return *this;
}

Circuit Circuit::adjoint() const {
    Circuit out(qubit_count_);
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        if (const auto* d = std::get_if<DenseGate>(&*it)) {
            out.ops_.emplace_back(DenseGate{d->qubits, d->unitary.adjoint()});
        } else if (const auto* f = std::get_if<FourierGate>(&*it)) {
            out.ops_.emplace_back(FourierGate{f->qubits, !f->inverse});
        } else {
            const auto& c = std::get<ControlledGate>(*it);
            out.ops_.emplace_back(
                ControlledGate{c.controls, c.targets, std::make_shared<const Circuit>(c.body->adjoint())});
        }
    }
    return out;
}

Matrix Circuit::to_matrix(int cap) const {
    if (qubit_count_ > cap) {
        throw Error(ErrorCode::CapExceeded, std::to_string(qubit_count_) + " qubits exceeds the dense cap of " +
                                                std::to_string(cap));
    }
    const auto dim = static_cast<Eigen::Index>(dimension_of(qubit_count_));
    Matrix m(dim, dim);
    Vector col(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        col.setZero();
        col(j) = 1.0;
        apply_in_place(*this, col);
        m.col(j) = col;
    }
    return m;
}

void apply_in_place(const Circuit& circuit, Vector& amplitudes) {
    if (static_cast<std::uint64_t>(amplitudes.size()) != dimension_of(circuit.qubit_count())) {
        throw Error(ErrorCode::DimensionMismatch, "state size does not match circuit width");
    }
    run(circuit, amplitudes, circuit.qubit_count(), iota_from(0, circuit.qubit_count()), 0);
}

StateVector apply(const Circuit& circuit, const StateVector& state) {
    if (state.qubit_count() != circuit.qubit_count()) {
        throw Error(ErrorCode::DimensionMismatch, "state has " + std::to_string(state.qubit_count()) +
                                                      " qubits, circuit has " +
                                                      std::to_string(circuit.qubit_count()));
    }
    Vector amps = state.amplitudes();
    apply_in_place(circuit, amps);
    return StateVector(state.qubit_count(), std::move(amps), state.normalized());
}

Circuit controlled(const Circuit& circuit, int control_count) {
    if (control_count < 1) throw Error(ErrorCode::PreconditionViolated, "need at least one control");
    Circuit out(control_count + circuit.qubit_count());
    out.add_controlled(circuit, iota_from(0, control_count), iota_from(control_count, circuit.qubit_count()));
    return out;
}

Circuit inverse_qft(int register_size) {
    if (register_size < 1) throw Error(ErrorCode::PreconditionViolated, "register size must be >= 1");
    Circuit c(register_size);
    c.add_fourier(iota_from(0, register_size), true);
    return c;
}

Circuit qft(int register_size) {
    if (register_size < 1) throw Error(ErrorCode::PreconditionViolated, "register size must be >= 1");
    Circuit c(register_size);
    c.add_fourier(iota_from(0, register_size), false);
    return c;
}

double outcome_probability(const StateVector& state, std::span<const int> qubits, std::span<const int> bits) {
    if (qubits.size() != bits.size()) throw Error(ErrorCode::DimensionMismatch, "qubits and bits differ in length");
    const int n = state.qubit_count();
    std::uint64_t mask = 0, want = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] < 0 || qubits[i] >= n) throw Error(ErrorCode::DimensionMismatch, "qubit out of range");
        mask |= bit_of(qubits[i], n);
        if (bits[i]) want |= bit_of(qubits[i], n);
    }
    const Vector& a = state.amplitudes();
    double p = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if ((static_cast<std::uint64_t>(i) & mask) == want) p += std::norm(a(i));
    }
    return p;
}

std::vector<double> register_distribution(const StateVector& state, std::span<const int> qubits) {
    const int n = state.qubit_count();
    const int m = static_cast<int>(qubits.size());
    for (int q : qubits) {
        if (q < 0 || q >= n) throw Error(ErrorCode::DimensionMismatch, "qubit out of range");
    }
    std::vector<double> dist(dimension_of(m), 0.0);
    const Vector& a = state.amplitudes();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        std::uint64_t y = 0;
        for (int b = 0; b < m; ++b) y = (y << 1) | ((static_cast<std::uint64_t>(i) >> (n - 1 - qubits[b])) & 1u);
        dist[y] += std::norm(a(i));
    }
    return dist;
}

namespace gates {

Matrix hadamard() {
    Matrix h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix fourier_matrix(int k, bool inverse) {
    const auto dim = static_cast<Eigen::Index>(dimension_of(k));
    Matrix f(dim, dim);
    const double sign = inverse ? -1.0 : 1.0;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index l = 0; l < dim; ++l) {
            // reduce j*l mod dim before forming the angle
            const auto jl = static_cast<double>((j * l) % dim);
            f(j, l) = scale * std::polar(1.0, sign * 2.0 * std::numbers::pi * jl / static_cast<double>(dim));
        }
    }
    return f;
}

}  // namespace gates

}  // namespace vibraq
