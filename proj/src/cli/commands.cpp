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

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "vibraq/cli.hpp"
#include "vibraq/errors.hpp"

namespace vibraq::cli {

namespace {

struct Options {
    std::string out_path;
    std::string format;
    std::optional<int> cap_qubits;
};

Limits resolve_limits(const Options& opts) {
    Limits limits;
    std::optional<int> cap = opts.cap_qubits;
    if (!cap) {
        if (const char* env = std::getenv("VIBRAQ_CAP_QUBITS"); env != nullptr && *env != '\0') {
            try {
                std::size_t used = 0;
                cap = std::stoi(env, &used);
                if (used != std::string(env).size()) throw std::invalid_argument(env);
            } catch (const std::exception&) {
                throw Error(ErrorCode::ParseError, std::string("VIBRAQ_CAP_QUBITS is not an integer: ") + env);
            }
        }
    }
    if (cap) {
        if (*cap < 1) throw Error(ErrorCode::PreconditionViolated, "qubit cap must be at least 1");
        limits.dense_qubits = *cap;
        limits.statevector_qubits = std::max(limits.statevector_qubits, *cap);
    }
    return limits;
}

Format resolve_format(const Options& opts, Format fallback) {
    return opts.format.empty() ? fallback : parse_format(opts.format);
}

void emit(const Options& opts, const std::string& text, std::ostream& out) {
    if (opts.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(opts.out_path);
    if (!f) throw Error(ErrorCode::PreconditionViolated, "cannot write " + opts.out_path);
    f << text;
    if (!f) throw Error(ErrorCode::PreconditionViolated, "failed writing " + opts.out_path);
}

int exit_code_for(const Error& e) { return e.code() == ErrorCode::UnstableMode ? kExitUnstable : kExitValidation; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Vibrational entropy from simulated quantum expectation estimates", "vibraq"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Options opts;
    app.add_option("--out", opts.out_path, "Write the output to this file instead of stdout");
    app.add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"json", "text", "csv"}));
    app.add_option("--cap-qubits", opts.cap_qubits, "Qubit cap for dense operators (env: VIBRAQ_CAP_QUBITS)");

    // entropy
    auto* entropy = app.add_subcommand("entropy", "Estimate the entropy of a job file");
    std::string entropy_job;
    std::optional<std::uint64_t> entropy_seed;
    bool allow_exclude = false;
    entropy->add_option("job", entropy_job, "Job file (JSON)")->required();
    entropy->add_option("--seed", entropy_seed, "Override the job's seed");
    entropy->add_flag("--allow-exclude", allow_exclude, "Drop unstable modes instead of failing");

    // derivative
    auto* derivative = app.add_subcommand("derivative", "Compare second-derivative estimates per mode");
    std::string derivative_job;
    std::optional<std::uint64_t> derivative_seed;
    derivative->add_option("job", derivative_job, "Job file (JSON)")->required();
    derivative->add_option("--seed", derivative_seed, "Override the job's seed");

    // cost
    auto* cost = app.add_subcommand("cost", "Tabulate query-complexity bounds");
    std::string params_path;
    CostGrid grid;
    cost->add_option("--params", params_path, "Params file (JSON); flags are ignored when given");
    cost->add_option("--b-norm", grid.b_norm, "LCU weight |b| of the perturbation (list)");
    cost->add_option("--kappa", grid.kappa, "Condition number (list)");
    cost->add_option("--epsilon", grid.epsilon, "Target error on the vibrational entropy (list)");
    cost->add_option("--delta", grid.delta, "Failure probability");
    cost->add_option("--k-min", grid.k_min, "Lower prior bound on the magnitude of <K>");
    cost->add_option("--k-max", grid.k_max, "Upper prior bound on the magnitude of <K>");
    cost->add_option("--mu-min", grid.mu_min, "Smallest reduced mass");
    cost->add_option("--temperature", grid.temperature, "Temperature");
    cost->add_option("--thetas", grid.thetas, "Characteristic temperatures (list)");

    // fixture
    auto* fixture = app.add_subcommand("fixture", "Generate a job file");
    fixture->require_subcommand(1);
    auto* fx_two = fixture->add_subcommand("two-level", "Two-level system H0 = diag(0, 1), V = X");
    auto* fx_fk = fixture->add_subcommand("fk", "Clock Hamiltonian of an all-identity circuit");
    int fk_length = 1;
    int fk_qubits = 1;
    fx_fk->add_option("--L", fk_length, "Circuit length")->required();
    fx_fk->add_option("--n", fk_qubits, "System qubits")->required();
    auto* fx_random = fixture->add_subcommand("random", "Random Pauli Hamiltonian with one mode");
    std::uint64_t random_seed = 0;
    int random_qubits = 2;
    fx_random->add_option("--seed", random_seed, "Generator seed")->required();
    fx_random->add_option("--qubits", random_qubits, "Qubit count")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        const Limits limits = resolve_limits(opts);
        if (entropy->parsed()) {
            const Format format = resolve_format(opts, Format::Json);
            Job job = load_job(entropy_job);
            if (entropy_seed) job.seed = *entropy_seed;
            EntropyOptions eo;
            eo.allow_exclude = allow_exclude;
            eo.limits = limits;
            const auto start = std::chrono::steady_clock::now();
            const EntropyReport report = estimate_entropy(job.system, job.method, job.seed, eo);
            RunMetadata meta;
            meta.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            emit(opts, format_report(report, job.system.thermo, meta, format), out);
        } else if (derivative->parsed()) {
            const Format format = resolve_format(opts, Format::Text);
            Job job = load_job(derivative_job);
            if (derivative_seed) job.seed = *derivative_seed;
            emit(opts, format_derivatives(derivative_table(job, limits), format), out);
        } else if (cost->parsed()) {
            const Format format = resolve_format(opts, Format::Text);
            const CostGrid g = params_path.empty() ? grid : load_cost_grid(params_path);
            emit(opts, format_costs(evaluate_cost_grid(g), format), out);
        } else if (fixture->parsed()) {
            if (!opts.format.empty() && opts.format != "json") {
                throw Error(ErrorCode::ParseError, "fixtures are always written as JSON");
            }
            Job job;
            if (fx_two->parsed()) {
                job = two_level_job();
            } else if (fx_fk->parsed()) {
                job = fk_job(fk_length, fk_qubits, limits.dense_qubits);
            } else {
                job = random_job(random_seed, random_qubits, limits.dense_qubits);
            }
            emit(opts, job_to_json(job).dump(2) + "\n", out);
        }
    } catch (const Error& e) {
        err << "vibraq: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kExitOk;
}

}  // namespace vibraq::cli
