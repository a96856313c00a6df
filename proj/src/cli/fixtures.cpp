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

#include <algorithm>
#include <random>
#include <string>

#include "vibraq/cli.hpp"
#include "vibraq/errors.hpp"
#include "vibraq/oracle.hpp"

namespace vibraq::cli {

using nlohmann::json;

namespace {

// 5% headroom over |a| / gap keeps the scaled spectrum strictly inside
// [1/kappa, 1].
double kappa_for(const LcuOperator& h0, const EigenSystem& eig) {
    const double a = lcu_weight(shifted_hamiltonian(h0, eig.ground_energy()));
    const double gap = spectral_gap(eig);
    if (!std::isfinite(gap)) return 1.0;
    return std::max(1.0, 1.05 * a / gap);
}

ThermoConfig default_thermo() {
    ThermoConfig t;
    t.temperature = 1.0;
    t.theta_rot = {0.5, 0.5, 0.5};
    return t;
}

PauliWord random_word(std::mt19937_64& rng, int qubits) {
    std::uniform_int_distribution<int> letter(0, 3);
    std::vector<Pauli> letters(static_cast<std::size_t>(qubits));
    for (auto& p : letters) p = static_cast<Pauli>(letter(rng));
    return PauliWord(std::move(letters));
}

}  // namespace

Job two_level_job() {
    Job job;
    job.system.h0 = LcuOperator(1).add(0.5, "I").add(-0.5, "Z");
    const EigenSystem eig = ground_state(job.system.h0);
    job.system.kappa = kappa_for(job.system.h0, eig);
    VibrationalMode mode;
    mode.name = "x";
    mode.perturbation = LcuOperator(1).add(1.0, "X");
    job.system.modes.push_back(mode);
    job.system.thermo = default_thermo();
    job.system.epsilon = 0.05;
    job.system.delta = 0.1;
    job.method = EstimationMethod::Exact;
    job.notes = {{"fixture", "two-level"},
                 {"description", "H0 = diag(0, 1), V = X"},
                 {"expected_k_expectation", -1.0},
                 {"expected_second_derivative", -2.0},
                 {"expected_entropy_exit", "unstable mode: no curvature offset"}};
    return job;
}

Job fk_job(int length, int system_qubits, int cap) {
    if (length < 1 || system_qubits < 1) {
        throw Error(ErrorCode::PreconditionViolated, "fk fixture needs L >= 1 and n >= 1");
    }
    const FkInstance inst = fk_identity_instance(length, system_qubits);
    const Matrix h = fk_hamiltonian_dense(inst, cap) + to_dense(fk_input_penalty(inst, cap), cap);
    Job job;
    job.system.h0 = pauli_decompose(h);
    const EigenSystem eig = ground_state(job.system.h0, cap);
    job.system.kappa = kappa_for(job.system.h0, eig);

    const LcuOperator v = fk_perturbation(inst, cap);
    const bool admissible = validate_perturbation(v, eig, 1e-9 * std::max(1.0, lcu_weight(v)));
    if (admissible) {
        VibrationalMode mode;
        mode.name = "clock_phase";
        mode.perturbation = v;
        const double k = exact_k_expectation(job.system.h0, v, eig, cap);
        mode.curvature_offset = -2.0 * k + 1.0;
        job.system.modes.push_back(mode);
    }
    job.system.thermo = default_thermo();
    job.system.epsilon = 0.05;
    job.system.delta = 0.1;
    job.method = EstimationMethod::Exact;

    const FkInstance padded = fk_padded(inst);
    json spectrum = json::array();
    for (int k = 0; k <= padded.length(); ++k) spectrum.push_back(fk_expected_eigenvalue(padded.length(), k));
    job.notes = {{"fixture", "fk"},
                 {"length", length},
                 {"padded_length", padded.length()},
                 {"system_qubits", system_qubits},
                 {"clock_qubits", fk_clock_qubits(length)},
                 {"hamiltonian", "clock Hamiltonian of the all-identity circuit plus input penalty"},
                 {"expected_connected_spectrum", spectrum},
                 {"perturbation_admissible", admissible}};
    return job;
}

Job random_job(std::uint64_t seed, int qubits, int cap) {
    if (qubits < 1) throw Error(ErrorCode::PreconditionViolated, "random fixture needs at least one qubit");
    if (qubits > cap) {
        throw Error(ErrorCode::CapExceeded, "random fixture on " + std::to_string(qubits) + " qubits exceeds the cap");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> small(-0.5, 0.5);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        LcuOperator h0(qubits);
        for (int t = 0; t < 2 * qubits + 1; ++t) h0.add(coeff(rng), random_word(rng, qubits));
        LcuOperator v(qubits);
        for (int t = 0; t < 2; ++t) v.add(small(rng), random_word(rng, qubits));
        if (h0.empty() || v.empty()) continue;
        EigenSystem eig;
        try {
            eig = ground_state(h0, cap);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::DegenerateGround) continue;
            throw;
        }
        if (spectral_gap(eig) < 1e-3 * std::max(1.0, eig.spectral_range())) continue;
        if (!validate_perturbation(v, eig, 1e-9 * std::max(1.0, lcu_weight(v)))) continue;

        Job job;
        job.system.h0 = h0;
        job.system.kappa = kappa_for(h0, eig);
        VibrationalMode mode;
        mode.name = "q0";
        mode.perturbation = v;
        const double k = exact_k_expectation(h0, v, eig, cap);
        mode.curvature_offset = -2.0 * k + 1.0;
        mode.k_prior = std::make_pair(k - 0.05, std::min(k + 0.05, 0.0));
        job.system.modes.push_back(mode);
        job.system.thermo = default_thermo();
        job.system.epsilon = 0.05;
        job.system.delta = 0.1;
        job.method = EstimationMethod::Exact;
        job.seed = seed;
        job.notes = {{"fixture", "random"},
                     {"seed", seed},
                     {"qubits", qubits},
                     {"exact_ground_energy", eig.ground_energy()},
                     {"exact_k_expectation", k}};
        return job;
    }
    throw Error(ErrorCode::DegenerateGround, "no nondegenerate random instance found for this seed");
}

}  // namespace vibraq::cli
