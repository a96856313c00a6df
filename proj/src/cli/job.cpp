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

#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>

#include "vibraq/cli.hpp"
#include "vibraq/errors.hpp"

namespace vibraq::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::ParseError, where + ": " + what);
}

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    require_object(j, where);
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) fail(where, "unknown key '" + key + "'");
    }
}

double number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) fail(where, std::string("missing '") + key + "'");
    if (!j.at(key).is_number()) fail(where, std::string("'") + key + "' must be a number");
    return j.at(key).get<double>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
    return j.contains(key) ? number(j, key, where) : fallback;
}

ThermoConfig parse_thermo(const json& j) {
    const std::string where = "thermo";
    check_keys(j, {"temperature", "pressure", "mass", "sigma_r", "theta_rot", "units"}, where);
    ThermoConfig t;
    t.temperature = number(j, "temperature", where);
    t.pressure = number_or(j, "pressure", 1.0, where);
    t.mass = number_or(j, "mass", 1.0, where);
    if (j.contains("sigma_r")) {
        if (!j.at("sigma_r").is_number_integer()) fail(where, "'sigma_r' must be an integer");
        t.sigma_r = j.at("sigma_r").get<int>();
    }
    if (j.contains("theta_rot")) {
        const json& tr = j.at("theta_rot");
        if (!tr.is_array() || tr.size() != 3) fail(where, "'theta_rot' must be an array of three numbers");
        for (std::size_t i = 0; i < 3; ++i) {
            if (!tr[i].is_number()) fail(where, "'theta_rot' must be an array of three numbers");
            t.theta_rot[i] = tr[i].get<double>();
        }
    }
    if (j.contains("units")) {
        if (!j.at("units").is_string()) fail(where, "'units' must be a string");
        const auto u = j.at("units").get<std::string>();
        if (u == "natural") {
            t.units = UnitSystem::Natural;
        } else if (u == "si") {
            t.units = UnitSystem::SI;
        } else {
            fail(where, "'units' must be \"natural\" or \"si\"");
        }
    }
    try {
        t.validate();
    } catch (const Error& e) {
        fail(where, e.what());
    }
    return t;
}

VibrationalMode parse_mode(const json& j, std::size_t index, int qubits) {
    const std::string where = "modes[" + std::to_string(index) + "]";
    check_keys(j, {"name", "mu", "perturbation", "curvature_offset", "k_prior"}, where);
    VibrationalMode m;
    if (!j.contains("name") || !j.at("name").is_string()) fail(where, "'name' must be a string");
    m.name = j.at("name").get<std::string>();
    m.mu = number(j, "mu", where);
    if (!(m.mu > 0.0)) fail(where, "'mu' must be positive");
    if (!j.contains("perturbation")) fail(where, "missing 'perturbation'");
    const json& pert = j.at("perturbation");
    m.perturbation = pert.is_array() && pert.empty() ? LcuOperator(qubits)
                                                     : parse_terms(pert, where + ".perturbation");
    if (m.perturbation.qubit_count() != qubits) fail(where, "perturbation acts on the wrong number of qubits");
    m.curvature_offset = number_or(j, "curvature_offset", 0.0, where);
    if (j.contains("k_prior")) {
        const json& p = j.at("k_prior");
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            fail(where, "'k_prior' must be [min, max]");
        }
        m.k_prior = std::make_pair(p[0].get<double>(), p[1].get<double>());
        if (!(m.k_prior->first <= m.k_prior->second)) fail(where, "'k_prior' needs min <= max");
    }
    return m;
}

}  // namespace

LcuOperator parse_terms(const json& terms, const std::string& where) {
    if (!terms.is_array() || terms.empty()) fail(where, "expected a non-empty array of {pauli, coeff} terms");
    std::optional<LcuOperator> op;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string tw = where + "[" + std::to_string(i) + "]";
        check_keys(terms[i], {"pauli", "coeff"}, tw);
        if (!terms[i].contains("pauli") || !terms[i].at("pauli").is_string()) fail(tw, "'pauli' must be a string");
        const double coeff = number(terms[i], "coeff", tw);
        PauliWord word;
        try {
            word = PauliWord::parse(terms[i].at("pauli").get<std::string>());
        } catch (const Error& e) {
            fail(tw, e.what());
        }
        if (word.qubit_count() < 1) fail(tw, "Pauli strings must name at least one qubit");
        if (!op) {
            op.emplace(word.qubit_count());
        } else if (word.qubit_count() != op->qubit_count()) {
            fail(tw, "Pauli strings must all have the same length");
        }
        op->add(coeff, word);
    }
    return *op;
}

json terms_to_json(const LcuOperator& op) {
    json arr = json::array();
    for (const auto& t : op.terms()) {
        PauliWord plain(t.word.letters());
        arr.push_back({{"pauli", plain.str()}, {"coeff", t.weight * t.word.sign()}});
    }
    return arr;
}

Job parse_job(const json& doc) {
    const std::string where = "job";
    check_keys(doc, {"schema_version", "hamiltonian", "e0", "kappa", "modes", "thermo", "precision", "method", "seed",
                     "notes"},
               where);
    if (doc.contains("schema_version")) {
        if (!doc.at("schema_version").is_number_integer() || doc.at("schema_version").get<int>() != kJobSchemaVersion) {
            fail(where, "unsupported schema_version (expected " + std::to_string(kJobSchemaVersion) + ")");
        }
    }
    Job job;
    if (!doc.contains("hamiltonian")) fail(where, "missing 'hamiltonian'");
    check_keys(doc.at("hamiltonian"), {"terms"}, "hamiltonian");
    if (!doc.at("hamiltonian").contains("terms")) fail("hamiltonian", "missing 'terms'");
    const json& hterms = doc.at("hamiltonian").at("terms");
    if (!hterms.is_array() || hterms.empty()) fail("hamiltonian", "'terms' must be a non-empty array");
    job.system.h0 = parse_terms(hterms, "hamiltonian.terms");
    const int qubits = job.system.h0.qubit_count();

    if (doc.contains("e0")) job.system.e0 = number(doc, "e0", where);
    job.system.kappa = number(doc, "kappa", where);
    if (!(job.system.kappa >= 1.0)) fail(where, "'kappa' must be >= 1");

    if (doc.contains("modes")) {
        const json& modes = doc.at("modes");
        if (!modes.is_array()) fail(where, "'modes' must be an array");
        for (std::size_t i = 0; i < modes.size(); ++i) job.system.modes.push_back(parse_mode(modes[i], i, qubits));
    }
    if (!doc.contains("thermo")) fail(where, "missing 'thermo'");
    job.system.thermo = parse_thermo(doc.at("thermo"));

    if (!doc.contains("precision")) fail(where, "missing 'precision'");
    const json& prec = doc.at("precision");
    check_keys(prec, {"epsilon", "delta"}, "precision");
    job.system.epsilon = number(prec, "epsilon", "precision");
    job.system.delta = number_or(prec, "delta", 0.1, "precision");
    if (!(job.system.epsilon > 0.0)) fail("precision", "'epsilon' must be positive");
    if (!(job.system.delta > 0.0 && job.system.delta < 1.0)) fail("precision", "'delta' must lie in (0, 1)");

    if (doc.contains("method")) {
        if (!doc.at("method").is_string()) fail(where, "'method' must be a string");
        const auto m = doc.at("method").get<std::string>();
        if (m == "exact") {
            job.method = EstimationMethod::Exact;
        } else if (m == "simulated") {
            job.method = EstimationMethod::Simulated;
        } else {
            fail(where, "'method' must be \"exact\" or \"simulated\"");
        }
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) fail(where, "'seed' must be a nonnegative integer");
        job.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("notes")) job.notes = doc.at("notes");
    return job;
}

Job load_job(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open job file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
    return parse_job(doc);
}

json job_to_json(const Job& job) {
    const SystemSpec& s = job.system;
    json doc;
    doc["schema_version"] = kJobSchemaVersion;
    doc["hamiltonian"] = {{"terms", terms_to_json(s.h0)}};
    if (s.e0) doc["e0"] = *s.e0;
    doc["kappa"] = s.kappa;
    json modes = json::array();
    for (const auto& m : s.modes) {
        json jm = {{"name", m.name}, {"mu", m.mu}, {"perturbation", terms_to_json(m.perturbation)}};
        if (m.curvature_offset != 0.0) jm["curvature_offset"] = m.curvature_offset;
        if (m.k_prior) jm["k_prior"] = {m.k_prior->first, m.k_prior->second};
        modes.push_back(jm);
    }
    doc["modes"] = modes;
    doc["thermo"] = {{"temperature", s.thermo.temperature},
                     {"pressure", s.thermo.pressure},
                     {"mass", s.thermo.mass},
                     {"sigma_r", s.thermo.sigma_r},
                     {"theta_rot", s.thermo.theta_rot},
                     {"units", unit_system_name(s.thermo.units)}};
    doc["precision"] = {{"epsilon", s.epsilon}, {"delta", s.delta}};
    doc["method"] = method_name(job.method);
    doc["seed"] = job.seed;
    if (!job.notes.is_null()) doc["notes"] = job.notes;
    return doc;
}

}  // namespace vibraq::cli
