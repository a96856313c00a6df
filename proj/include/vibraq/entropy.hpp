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

// Ideal-gas thermochemistry: harmonic vibrational entropy from spring
// constants, plus translational, rotational and electronic terms, and the
// end-to-end estimator that obtains the spring constants from ground-state
// expectations of K = V (E0 I - H0)^+ V.
//
// Entropies are returned in units of k_B.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vibraq/block_encoding.hpp"
#include "vibraq/estimation.hpp"
#include "vibraq/linalg.hpp"
#include "vibraq/operators.hpp"

namespace vibraq {

enum class UnitSystem { Natural, SI };

struct PhysicalConstants {
    double h;
    double hbar;
    double k_b;
};

/// Natural units set h = hbar = k_B = 1; SI uses the exact CODATA 2018
/// values h = 6.62607015e-34 J s and k_B = 1.380649e-23 J/K.
PhysicalConstants constants_for(UnitSystem units);
const char* unit_system_name(UnitSystem units);

struct ThermoConfig {
    double temperature = 1.0;
    double pressure = 1.0;
    double mass = 1.0;
    int sigma_r = 1;
    std::array<double, 3> theta_rot{1.0, 1.0, 1.0};
    UnitSystem units = UnitSystem::Natural;

    /// Throws PreconditionViolated unless every field is positive.
    void validate() const;
};

enum class Provenance { Exact, Simulated, FiniteDifference };
const char* provenance_name(Provenance p);

struct SpringConstant {
    double value = 0.0;
    Provenance provenance = Provenance::Exact;
    bool stable() const { return value > 0.0; }
};

SpringConstant spring_constant(double d2e, Provenance provenance = Provenance::Exact);

/// (hbar / k_B) sqrt(k / mu). Throws UnstableMode for k <= 0 and
/// PreconditionViolated for mu <= 0.
double characteristic_temperature(double k, double mu, const ThermoConfig& cfg);

/// x / (e^x - 1) - ln(1 - e^-x) for x > 0; 1 - ln x below x = 1e-8.
double vibrational_summand(double x);
double vibrational_entropy(const std::vector<double>& thetas, double temperature);

double translational_entropy(const ThermoConfig& cfg);
/// Warns on stderr when T is below the largest rotational temperature.
double rotational_entropy(const ThermoConfig& cfg);
double electronic_entropy();
double total_entropy(const ThermoConfig& cfg, double s_vib);
/// Single-logarithm form with the constants 5/2 + 3/2 merged into 4.
double merged_total_entropy(const ThermoConfig& cfg, double s_vib);

struct ErrorBudget {
    double z = 0.0;              // sum_i 1 / (exp(theta_i / 2T) - 1)
    double epsilon_prime = 0.0;  // eps T / Z
    /// Per-theta tolerance that makes the summed per-mode bounds at most
    /// eps: min(2 eps T / (5 Z), min_i theta_i / 2).
    double theta_tolerance = 0.0;
};

/// Throws PreconditionViolated unless T > 0, every theta > 0 and
/// eps < min_i theta_i / 2.
ErrorBudget error_budget(double epsilon, double temperature, const std::vector<double>& thetas);

/// 5 eps' / (2 T (exp(theta / 2T) - 1)): bound on one summand's change when
/// theta moves by at most eps' <= theta / 2.
double summand_error_bound(double theta_error, double theta, double temperature);

struct VibrationalMode {
    std::string name;
    LcuOperator perturbation;
    double mu = 1.0;
    /// Classical curvature added to 2 <K>; pure level repulsion alone makes
    /// the second derivative nonpositive.
    double curvature_offset = 0.0;
    /// Known interval containing <E0|K|E0>; defaults to
    /// [-|b|^2 kappa / |a|, 0].
    std::optional<std::pair<double, double>> k_prior;
};

struct SystemSpec {
    LcuOperator h0;
    std::optional<double> e0;
    double kappa = 1.0;
    std::vector<VibrationalMode> modes;
    ThermoConfig thermo;
    double epsilon = 0.05;  // target error on S (units of k_B)
    double delta = 0.1;
};

struct DerivativeEstimate {
    double value = 0.0;  // 2 <K>, the level-repulsion part of the curvature
    double error_bound = 0.0;
    double k_expectation = 0.0;
    double alpha = 0.0;
    std::uint64_t grid = 0;
    int repetitions = 0;
    QueryLedger queries;
};

/// Simulated-pipeline estimate of 2 <E0|K|E0>: half of the error budget goes
/// to the block encoding and half to amplitude estimation, so
/// |value - 2 <K>| <= epsilon with probability >= 1 - delta. The prior
/// defaults to [-|b|^2 kappa / |a|, 0].
DerivativeEstimate estimate_second_derivative(const LcuOperator& h0, const LcuOperator& v, double e0, double kappa,
                                              double epsilon, double delta,
                                              std::optional<std::pair<double, double>> k_prior, std::uint64_t seed,
                                              const Limits& limits = {});

enum class EstimationMethod { Exact, Simulated };
const char* method_name(EstimationMethod m);

struct EntropyOptions {
    bool allow_exclude = false;
    Limits limits;
};

struct ModeResult {
    std::string name;
    bool excluded = false;
    double k_expectation = 0.0;  // <E0|K|E0>, estimated or exact
    double d2e = 0.0;
    SpringConstant k;
    double theta = 0.0;  // 0 when excluded
    double k_error = 0.0;
    double theta_error = 0.0;
    double entropy_error = 0.0;
    double alpha = 0.0;
    std::uint64_t grid = 0;
    int repetitions = 0;
    QueryLedger queries;
};

struct EntropyReport {
    std::vector<ModeResult> modes;
    double e0 = 0.0;
    double s_vib = 0.0;
    double s_trans = 0.0;
    double s_rot = 0.0;
    double s_el = 0.0;
    double total = 0.0;
    double error_bound = 0.0;
    double delta = 0.0;
    QueryLedger queries;
    EstimationMethod method = EstimationMethod::Exact;
    std::uint64_t seed = 0;
};

/// Prepares every deterministic piece of an entropy estimate (ground state,
/// exact references, block encodings, outcome distributions) once, so
/// repeated seeded runs only sample.
class EntropyEstimator {
   public:
    /// Throws DegenerateGround, PerturbationInvalid, SpectrumViolation,
    /// UnstableMode (unless excluded), PreconditionViolated, CapExceeded.
    EntropyEstimator(const SystemSpec& spec, EstimationMethod method, const EntropyOptions& options = {});
    ~EntropyEstimator();
    EntropyEstimator(EntropyEstimator&&) noexcept;
    EntropyEstimator& operator=(EntropyEstimator&&) noexcept;

    EntropyReport run(std::uint64_t seed) const;
    /// Exact reference entropy of the same job (no sampling).
    double exact_total() const;

   private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

EntropyReport estimate_entropy(const SystemSpec& spec, EstimationMethod method, std::uint64_t seed,
                               const EntropyOptions& options = {});

}  // namespace vibraq
