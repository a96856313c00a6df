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

// Ground-state expectation values of a block-encoded operator: the Hadamard
// test, the walk operator built from it, amplitude estimation by phase
// estimation of the walk, and median amplification over repeated runs.
//
// Register layout of the test circuit T: qubit 0 is the test qubit, then the
// block encoding's ancillas, then the system.

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "vibraq/block_encoding.hpp"
#include "vibraq/linalg.hpp"
#include "vibraq/simulator.hpp"

namespace vibraq {

struct HadamardTestInstance {
    BlockEncoding u_k;
    Circuit u_0{0};  // state preparation on the system register

    int system_qubits() const { return u_k.system_qubits; }
    int total_qubits() const { return u_k.total_qubits() + 1; }
};

/// Unitary whose first column is `state` (normalized within 1e-10).
Matrix state_preparation_unitary(const Vector& state);

/// Instance with u_0 preparing `ground`. Throws DimensionMismatch.
HadamardTestInstance make_hadamard_instance(BlockEncoding u_k, const Vector& ground);

/// H on the test qubit, U_0 on the system, U_K controlled on the test
/// qubit, H on the test qubit.
Circuit hadamard_test_circuit(const HadamardTestInstance& inst);

/// Probability that the test qubit reads 0 after T|0...0>, from simulation;
/// equals (1 + <E0|K|E0>/alpha) / 2 for an exact encoding.
double hadamard_probability(const HadamardTestInstance& inst);

/// W = -(I - 2 T|0><0|T^dagger)(I - 2 P_G), with P_G the projector onto the
/// test qubit in |0>. Realized as Z(test) T^dagger R0 T with
/// R0 = I - 2|0><0| from X layers around a multi-controlled Z.
Circuit walk_operator(const HadamardTestInstance& inst);

struct PriorBounds {
    double k_min = 0.0;
    double k_max = 0.0;
    double alpha = 1.0;

    /// Throws InvalidBounds unless k_min <= k_max and both lie in
    /// [-alpha, alpha].
    void validate() const;
    double p_min() const { return 0.5 + k_min / (2.0 * alpha); }
    double p_max() const { return 0.5 + k_max / (2.0 * alpha); }
};

struct EstimateReport {
    double value = 0.0;
    double error_bound = 0.0;
    double delta = 0.0;
    QueryLedger queries;
    std::string method;
    double p_hat = 0.0;
    std::uint64_t m = 0;  // phase-estimation grid size M = 2^(k+1)
    int d = 1;            // repetitions feeding the median
};

/// Largest |p_hat - P(0)| guaranteed with probability >= 8/pi^2:
/// 2 pi sqrt(P_max (1 - P_min)) / M + pi^2 / M^2.
double amplitude_error_bound(std::uint64_t m, double p_min, double p_max);

struct AmplitudeDistribution {
    std::uint64_t m = 0;
    std::vector<double> probability;  // over outcomes y = 0..M-1
    /// sin^2(pi y / M) for outcome y.
    double estimate(std::uint64_t y) const;
    /// Total probability of outcomes whose estimate lies within `radius`
    /// of `target`.
    double mass_within(double target, double radius) const;
    std::uint64_t most_probable() const;
};

/// Exact outcome distribution of amplitude estimation with k + 1 control
/// qubits (M = 2^(k+1)): Hadamards, T on the target, control qubit q drives
/// W^(2^(k-q)), inverse QFT on the control register. Throws CapExceeded,
/// PreconditionViolated for k < 0.
AmplitudeDistribution amplitude_distribution(const HadamardTestInstance& inst, int k, const Limits& limits = {});

/// Ledger of one amplitude estimation run with grid size M: M - 1 walk
/// steps, 2(M - 1) + 1 uses each of U_0 and controlled-U_K, and the base
/// oracles of U_K charged once per controlled-U_K use.
QueryLedger amplitude_queries(const HadamardTestInstance& inst, std::uint64_t m);

/// Most probable outcome's estimate with its report (method
/// "amplitude_estimation", d = 1).
std::pair<double, EstimateReport> amplitude_estimate(const HadamardTestInstance& inst, int k,
                                                     const Limits& limits = {});

/// Median of d independent runs, each drawing from one generator seeded
/// with `seed`. Throws PreconditionViolated unless d is odd and positive.
double median_amplify(const std::function<double(std::mt19937_64&)>& single_run, int d, std::uint64_t seed);

/// Smallest power of two M >= 4 with
/// M >= pi (sqrt(q) + sqrt(q + eps0)) / eps0, q = P_max (1 - P_min).
std::uint64_t grid_size(double eps0, double p_min, double p_max);
/// Smallest odd D >= 16 ln(1/delta) / (8 - pi^2 / 2).
int repetition_count(double delta);

/// Prior-bounded estimator of <E0|K|E0>. Construction fixes M and D and
/// computes the exact outcome distribution once; each run() samples D
/// outcomes from it and reports alpha (2 median(p_hat) - 1).
class ExpectationEstimator {
   public:
    /// Throws InvalidBounds, InvalidPrecision, CapExceeded.
    ExpectationEstimator(const HadamardTestInstance& inst, const PriorBounds& bounds, double epsilon, double delta,
                         const Limits& limits = {});

    EstimateReport run(std::uint64_t seed) const;

    std::uint64_t grid() const { return dist_.m; }
    int repetitions() const { return d_; }
    const AmplitudeDistribution& distribution() const { return dist_; }
    double alpha() const { return alpha_; }

   private:
    double alpha_;
    double delta_;
    double error_bound_;
    int d_;
    AmplitudeDistribution dist_;
    QueryLedger per_run_;
};

EstimateReport estimate_expectation(const HadamardTestInstance& inst, const PriorBounds& bounds, double epsilon,
                                    double delta, std::uint64_t seed, const Limits& limits = {});

// Query-cost bounds with every suppressed constant set to 1 ("up to
// constants"); none of these are literal gate counts.

struct CostParams {
    double b_norm = 1.0;  // |b|
    double kappa = 1.0;
    double epsilon = 1e-2;  // target error on S_vib
    double delta = 0.1;
    double k_min = 0.0;  // prior bounds on <E0|K|E0>
    double k_max = 0.0;
    double mu_min = 1.0;
    double temperature = 1.0;
    std::vector<double> thetas;
};

struct CostTable {
    double z = 0.0;              // sum_i 1 / (exp(theta_i / 2T) - 1)
    double epsilon_prime = 0.0;  // eps T / Z, per-theta error
    double epsilon_k = 0.0;      // eps' sqrt(mu_min), error on <K>
    double alpha = 0.0;          // |b|^2 kappa
    double epsilon_1 = 0.0;      // = epsilon_2, from the Lambert W split
    double queries_uk = 0.0;     // alpha log(alpha / eps_1)
    double queries_expectation = 0.0;  // uses of U_K at error eps_2
    double queries_total = 0.0;        // product of the two
    double queries_leading = 0.0;      // closed-form S_vib bound
};

/// Throws PreconditionViolated unless every parameter is positive,
/// k_min <= k_max, and eps_K < k_min / 2.
CostTable query_cost(const CostParams& params);

/// Principal branch W_0 on [-1/e, inf) and lower branch W_-1 on [-1/e, 0),
/// by Halley iteration to 1e-12. Throw PreconditionViolated out of domain.
double lambert_w0(double x);
double lambert_wm1(double x);

}  // namespace vibraq
