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

#include "vibraq/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "vibraq/errors.hpp"

namespace vibraq {

namespace {

std::vector<int> range(int start, int count) {
    std::vector<int> v(static_cast<std::size_t>(count));
    std::iota(v.begin(), v.end(), start);
    return v;
}

// Reflection I - 2|0...0><0...0| on n qubits.
Circuit zero_reflection(int n) {
    Circuit c(n);
    for (int q = 0; q < n; ++q) c.add_gate(q, gates::pauli_x());
    Circuit z(1);
    z.add_gate(0, gates::pauli_z());
    c.add_controlled(z, range(0, n - 1), {n - 1});
    for (int q = 0; q < n; ++q) c.add_gate(q, gates::pauli_x());
    return c;
}

}  // namespace

Matrix state_preparation_unitary(const Vector& state) {
    if (std::abs(state.norm() - 1.0) > 1e-10) {
        throw Error(ErrorCode::DimensionMismatch, "state preparation needs a normalized state");
    }
    // Householder reflection taking phase * |0> to `state`, where the phase
    // makes <0|state> real; the phase is then absorbed into the first column.
    const double mag0 = std::abs(state(0));
    const Complex phase = mag0 > 0.0 ? state(0) / mag0 : Complex(1.0);
    Vector u = -state;
    u(0) += phase;
    Matrix q = Matrix::Identity(state.size(), state.size());
    const double un = u.squaredNorm();
    if (un > 1e-30) q -= (2.0 / un) * (u * u.adjoint());
    q.col(0) *= phase;
    return q;
}

HadamardTestInstance make_hadamard_instance(BlockEncoding u_k, const Vector& ground) {
    const int n = u_k.system_qubits;
    if (ground.size() != static_cast<Eigen::Index>(dimension_of(n))) {
        throw Error(ErrorCode::DimensionMismatch, "ground state does not match the system register");
    }
    HadamardTestInstance inst;
    inst.u_k = std::move(u_k);
    inst.u_0 = Circuit(n);
    inst.u_0.add_gate(range(0, n), state_preparation_unitary(ground));
    return inst;
}

Circuit hadamard_test_circuit(const HadamardTestInstance& inst) {
    if (inst.u_0.qubit_count() != inst.system_qubits()) {
        throw Error(ErrorCode::DimensionMismatch, "U_0 and U_K act on different system sizes");
    }
    const int m = inst.u_k.ancilla_count;
    const int n = inst.system_qubits();
    Circuit t(inst.total_qubits());
    t.add_gate(0, gates::hadamard());
    t.append(inst.u_0, range(1 + m, n));
    t.add_controlled(inst.u_k.realization, {0}, range(1, m + n));
    t.add_gate(0, gates::hadamard());
    return t;
}

double hadamard_probability(const HadamardTestInstance& inst) {
    const StateVector out = apply(hadamard_test_circuit(inst), StateVector(inst.total_qubits()));
    const int q0 = 0;
    const int bit = 0;
    return outcome_probability(out, std::span<const int>(&q0, 1), std::span<const int>(&bit, 1));
}

Circuit walk_operator(const HadamardTestInstance& inst) {
    const int total = inst.total_qubits();
    const Circuit t = hadamard_test_circuit(inst);
    // -(I - 2P_G) is Z on the test qubit; the two minus signs cancel.
    Circuit w(total);
    w.add_gate(0, gates::pauli_z());
    w.append(t.adjoint());
    w.append(zero_reflection(total));
    w.append(t);
    return w;
}

void PriorBounds::validate() const {
    if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidBounds, "alpha must be positive");
    if (!(k_min <= k_max)) throw Error(ErrorCode::InvalidBounds, "k_min exceeds k_max");
    if (std::abs(k_min) > alpha * (1.0 + 1e-12) || std::abs(k_max) > alpha * (1.0 + 1e-12)) {
        throw Error(ErrorCode::InvalidBounds, "prior bounds exceed alpha in magnitude");
    }
}

double amplitude_error_bound(std::uint64_t m, double p_min, double p_max) {
    const double md = static_cast<double>(m);
    const double q = std::max(0.0, p_max * (1.0 - p_min));
    return 2.0 * std::numbers::pi * std::sqrt(q) / md + std::numbers::pi * std::numbers::pi / (md * md);
}

double AmplitudeDistribution::estimate(std::uint64_t y) const {
    const double s = std::sin(std::numbers::pi * static_cast<double>(y) / static_cast<double>(m));
    return s * s;
}

double AmplitudeDistribution::mass_within(double target, double radius) const {
    double mass = 0.0;
    for (std::uint64_t y = 0; y < m; ++y) {
        if (std::abs(estimate(y) - target) <= radius) mass += probability[y];
    }
    return mass;
}

std::uint64_t AmplitudeDistribution::most_probable() const {
    return static_cast<std::uint64_t>(std::max_element(probability.begin(), probability.end()) - probability.begin());
}

AmplitudeDistribution amplitude_distribution(const HadamardTestInstance& inst, int k, const Limits& limits) {
    if (k < 0) throw Error(ErrorCode::PreconditionViolated, "register index k must be >= 0");
    const int reg = k + 1;
    const int target = inst.total_qubits();
    if (target > limits.dense_qubits) {
        throw Error(ErrorCode::CapExceeded, "walk operator on " + std::to_string(target) + " qubits");
    }
    if (reg + target > limits.statevector_qubits) {
        throw Error(ErrorCode::CapExceeded,
                    "amplitude estimation needs " + std::to_string(reg + target) + " qubits");
    }
    const auto targets = range(reg, target);
    Circuit c(reg + target);
    for (int q = 0; q < reg; ++q) c.add_gate(q, gates::hadamard());
    c.append(hadamard_test_circuit(inst), targets);

    // Control qubit q carries weight 2^(k - q) in the outcome index.
    Matrix power = walk_operator(inst).to_matrix(limits.dense_qubits);
    std::vector<Matrix> powers(static_cast<std::size_t>(reg));
    for (int j = 0; j < reg; ++j) {
        powers[j] = power;
        if (j + 1 < reg) power = power * power;
    }
    for (int q = 0; q < reg; ++q) {
        Circuit body(target);
        body.add_gate(range(0, target), powers[k - q]);
        c.add_controlled(body, {q}, targets);
    }
    c.add_fourier(range(0, reg), true);

    const StateVector out = apply(c, StateVector(reg + target));
    const auto reg_qubits = range(0, reg);
    AmplitudeDistribution dist;
    dist.m = dimension_of(reg);
    dist.probability = register_distribution(out, reg_qubits);
    return dist;
}

QueryLedger amplitude_queries(const HadamardTestInstance& inst, std::uint64_t m) {
    const std::uint64_t uses = 2 * (m - 1) + 1;
    QueryLedger ledger;
    ledger.add(oracle_names::kWalk, m - 1);
    ledger.add(oracle_names::kStatePrep, uses);
    ledger.add(oracle_names::kControlledUK, uses);
    ledger.merge(inst.u_k.queries.scaled(uses));
    return ledger;
}

std::pair<double, EstimateReport> amplitude_estimate(const HadamardTestInstance& inst, int k, const Limits& limits) {
    const AmplitudeDistribution dist = amplitude_distribution(inst, k, limits);
    const double p_hat = dist.estimate(dist.most_probable());
    EstimateReport report;
    report.p_hat = p_hat;
    report.value = inst.u_k.alpha * (2.0 * p_hat - 1.0);
    report.error_bound = 2.0 * inst.u_k.alpha * amplitude_error_bound(dist.m, 0.0, 1.0);
    report.delta = 1.0 - 8.0 / (std::numbers::pi * std::numbers::pi);
    report.queries = amplitude_queries(inst, dist.m);
    report.method = "amplitude_estimation";
    report.m = dist.m;
    report.d = 1;
    return {p_hat, std::move(report)};
}

double median_amplify(const std::function<double(std::mt19937_64&)>& single_run, int d, std::uint64_t seed) {
    if (d < 1 || d % 2 == 0) throw Error(ErrorCode::PreconditionViolated, "repetition count must be odd and positive");
    std::mt19937_64 rng(seed);
    std::vector<double> runs(static_cast<std::size_t>(d));
    for (auto& r : runs) r = single_run(rng);
    auto mid = runs.begin() + d / 2;
    std::nth_element(runs.begin(), mid, runs.end());
    return *mid;
}

std::uint64_t grid_size(double eps0, double p_min, double p_max) {
    if (!(eps0 > 0.0)) throw Error(ErrorCode::InvalidPrecision, "eps0 must be positive");
    const double q = std::max(0.0, p_max * (1.0 - p_min));
    const double needed = std::numbers::pi * (std::sqrt(q) + std::sqrt(q + eps0)) / eps0;
    std::uint64_t m = 4;
    while (static_cast<double>(m) < needed) {
        if (m > (std::uint64_t{1} << 40)) throw Error(ErrorCode::CapExceeded, "grid size overflow");
        m <<= 1;
    }
    return m;
}

int repetition_count(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidPrecision, "delta must lie in (0, 1)");
    const double pi2 = std::numbers::pi * std::numbers::pi;
    int d = static_cast<int>(std::ceil(16.0 * std::log(1.0 / delta) / (8.0 - pi2 / 2.0)));
    d = std::max(d, 1);
    if (d % 2 == 0) ++d;
    return d;
}

ExpectationEstimator::ExpectationEstimator(const HadamardTestInstance& inst, const PriorBounds& bounds,
                                           double epsilon, double delta, const Limits& limits)
    : alpha_(inst.u_k.alpha), delta_(delta) {
    if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidPrecision, "epsilon must be positive");
    bounds.validate();
    if (std::abs(bounds.alpha - alpha_) > 1e-9 * alpha_) {
        throw Error(ErrorCode::InvalidBounds, "prior alpha differs from the encoding's alpha");
    }
    d_ = repetition_count(delta);
    const double eps0 = epsilon / (2.0 * alpha_);
    const std::uint64_t m = grid_size(eps0, bounds.p_min(), bounds.p_max());
    int k = 0;
    while ((std::uint64_t{1} << (k + 1)) < m) ++k;
    dist_ = amplitude_distribution(inst, k, limits);
    error_bound_ = 2.0 * alpha_ * amplitude_error_bound(m, bounds.p_min(), bounds.p_max());
    per_run_ = amplitude_queries(inst, m);
}

EstimateReport ExpectationEstimator::run(std::uint64_t seed) const {
    std::discrete_distribution<std::uint64_t> outcome(dist_.probability.begin(), dist_.probability.end());
    const double p_hat =
        median_amplify([&](std::mt19937_64& rng) { return dist_.estimate(outcome(rng)); }, d_, seed);
    EstimateReport report;
    report.p_hat = p_hat;
    report.value = alpha_ * (2.0 * p_hat - 1.0);
    report.error_bound = error_bound_;
    report.delta = delta_;
    report.queries = per_run_.scaled(static_cast<std::uint64_t>(d_));
    report.method = "amplitude_estimation";
    report.m = dist_.m;
    report.d = d_;
    return report;
}

EstimateReport estimate_expectation(const HadamardTestInstance& inst, const PriorBounds& bounds, double epsilon,
                                    double delta, std::uint64_t seed, const Limits& limits) {
    return ExpectationEstimator(inst, bounds, epsilon, delta, limits).run(seed);
}

}  // namespace vibraq
