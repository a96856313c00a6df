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

// Batch front end: JSON job files, report serialization, fixture
// generation and the `vibraq` subcommands.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "vibraq/entropy.hpp"

namespace vibraq::cli {

inline constexpr int kJobSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitUnstable = 3 };

struct Job {
    SystemSpec system;
    EstimationMethod method = EstimationMethod::Exact;
    std::uint64_t seed = 0;
    nlohmann::json notes;  // free-form, carried through untouched
};

/// Strict schema check; any unknown key, wrong type or inconsistent qubit
/// count throws ParseError.
Job parse_job(const nlohmann::json& doc);
/// Throws ParseError for unreadable files or malformed JSON.
Job load_job(const std::string& path);
nlohmann::json job_to_json(const Job& job);

LcuOperator parse_terms(const nlohmann::json& terms, const std::string& where);
nlohmann::json terms_to_json(const LcuOperator& op);

enum class Format { Json, Text, Csv };
Format parse_format(const std::string& name);

struct RunMetadata {
    double wall_time_s = 0.0;
};

nlohmann::json report_to_json(const EntropyReport& report, const ThermoConfig& thermo, const RunMetadata& meta);
std::string format_report(const EntropyReport& report, const ThermoConfig& thermo, const RunMetadata& meta,
                          Format format);

struct DerivativeRow {
    std::string name;
    double sum_formula = 0.0;
    double finite_difference = 0.0;
    double simulated = 0.0;
    double simulated_error_bound = 0.0;
    double max_deviation = 0.0;
};
std::vector<DerivativeRow> derivative_table(const Job& job, const Limits& limits);
std::string format_derivatives(const std::vector<DerivativeRow>& rows, Format format);

struct CostGrid {
    std::vector<double> b_norm{1.0};
    std::vector<double> kappa{2.0};
    std::vector<double> epsilon{1e-3};
    double delta = 0.1;
    double k_min = 0.01;
    double k_max = 0.02;
    double mu_min = 1.0;
    double temperature = 1.0;
    std::vector<double> thetas{1.0};
};
/// Reads a params file with the CostGrid keys; scalars or lists for b_norm,
/// kappa and epsilon. Throws ParseError.
CostGrid load_cost_grid(const std::string& path);
/// Cartesian product over b_norm x kappa x epsilon.
std::vector<std::pair<CostParams, CostTable>> evaluate_cost_grid(const CostGrid& grid);
std::string format_costs(const std::vector<std::pair<CostParams, CostTable>>& rows, Format format);

/// H0 = diag(0, 1), V = X: <K> = -1, second derivative -2.
Job two_level_job();
/// Clock Hamiltonian of an all-identity circuit of length L on n qubits
/// plus an input penalty, with the phase-rotation perturbation as its mode
/// when admissible. Notes record the expected connected spectrum.
Job fk_job(int length, int system_qubits, int cap = kDefaultDenseCap);
/// Random Pauli Hamiltonian with one random two-term mode, kappa and a
/// tight prior computed from the exact oracle. Deterministic in `seed`.
Job random_job(std::uint64_t seed, int qubits, int cap = kDefaultDenseCap);

/// Entry point of the `vibraq` tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vibraq::cli
