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
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "vibraq/cli.hpp"
#include "vibraq/errors.hpp"
#include "vibraq/oracle.hpp"

namespace vibraq::cli {

using nlohmann::json;

namespace {

json ledger_to_json(const QueryLedger& ledger) {
    json j = json::object();
    for (const auto& [oracle, count] : ledger.counts()) j[oracle] = count;
    return j;
}

std::string ledger_to_text(const QueryLedger& ledger) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [oracle, count] : ledger.counts()) {
        os << (first ? "" : ", ") << oracle << "=" << count;
        first = false;
    }
    return first ? "-" : os.str();
}

// Full round-trip precision for machine-readable output.
std::string exact(double x) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
    return os.str();
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, "cost params: " + what); }

std::vector<double> number_list(const json& j, const char* key) {
    const json& v = j.at(key);
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(v.get<double>());
    } else if (v.is_array() && !v.empty()) {
        for (const auto& x : v) {
            if (!x.is_number()) fail(std::string("'") + key + "' must hold numbers");
            out.push_back(x.get<double>());
        }
    } else {
        fail(std::string("'") + key + "' must be a number or a non-empty list");
    }
    return out;
}

double number(const json& j, const char* key) {
    if (!j.at(key).is_number()) fail(std::string("'") + key + "' must be a number");
    return j.at(key).get<double>();
}

}  // namespace

Format parse_format(const std::string& name) {
    if (name == "json") return Format::Json;
    if (name == "text") return Format::Text;
    if (name == "csv") return Format::Csv;
    throw Error(ErrorCode::ParseError, "unknown format '" + name + "' (expected json, text or csv)");
}

json report_to_json(const EntropyReport& report, const ThermoConfig& thermo, const RunMetadata& meta) {
    json modes = json::array();
    for (const ModeResult& m : report.modes) {
        modes.push_back({{"name", m.name},
                         {"excluded", m.excluded},
                         {"k_expectation", m.k_expectation},
                         {"d2e", m.d2e},
                         {"k", m.k.value},
                         {"provenance", provenance_name(m.k.provenance)},
                         {"theta", m.theta},
                         {"k_error", m.k_error},
                         {"theta_error", m.theta_error},
                         {"error_bound", m.entropy_error},
                         {"alpha", m.alpha},
                         {"M", m.grid},
                         {"D", m.repetitions},
                         {"queries", ledger_to_json(m.queries)}});
    }
    json doc;
    doc["schema_version"] = kJobSchemaVersion;
    doc["modes"] = modes;
    doc["e0"] = report.e0;
    doc["entropy"] = {{"s_vib", report.s_vib},
                      {"s_trans", report.s_trans},
                      {"s_rot", report.s_rot},
                      {"s_el", report.s_el},
                      {"total", report.total}};
    doc["error_bound"] = report.error_bound;
    doc["delta"] = report.delta;
    doc["queries"] = ledger_to_json(report.queries);
    doc["metadata"] = {{"seed", report.seed},
                       {"method", method_name(report.method)},
                       {"units", unit_system_name(thermo.units)},
                       {"version", kVersion},
                       {"wall_time_s", meta.wall_time_s}};
    return doc;
}

std::string format_report(const EntropyReport& report, const ThermoConfig& thermo, const RunMetadata& meta,
                          Format format) {
    std::ostringstream os;
    switch (format) {
        case Format::Json:
            os << report_to_json(report, thermo, meta).dump(2) << "\n";
            break;
        case Format::Text: {
            os << "method " << method_name(report.method) << ", seed " << report.seed << ", units "
               << unit_system_name(thermo.units) << ", E0 = " << std::setprecision(10) << report.e0 << "\n\n";
            os << std::left << std::setw(16) << "mode" << std::right << std::setw(14) << "<K>" << std::setw(14)
               << "d2E" << std::setw(14) << "theta" << std::setw(14) << "S bound" << std::setw(10) << "M"
               << std::setw(6) << "D" << "\n";
            os << std::setprecision(6);
            for (const ModeResult& m : report.modes) {
                os << std::left << std::setw(16) << m.name << std::right << std::setw(14) << m.k_expectation
                   << std::setw(14) << m.d2e << std::setw(14);
                if (m.excluded) {
                    os << "excluded";
                } else {
                    os << m.theta;
                }
                os << std::setw(14) << m.entropy_error << std::setw(10) << m.grid << std::setw(6) << m.repetitions
                   << "\n";
            }
            os << "\nS_vib   " << report.s_vib << "\nS_trans " << report.s_trans << "\nS_rot   " << report.s_rot
               << "\nS_el    " << report.s_el << "\nS       " << report.total << "  (bound " << report.error_bound
               << ", delta " << report.delta << ")\n";
            os << "queries " << ledger_to_text(report.queries) << "\n";
            os << "wall time " << meta.wall_time_s << " s\n";
            break;
        }
        case Format::Csv:
            os << "record,name,field,value\n";
            for (const ModeResult& m : report.modes) {
                const std::string n = csv_quote(m.name);
                os << "mode," << n << ",excluded," << (m.excluded ? 1 : 0) << "\n";
                os << "mode," << n << ",k_expectation," << exact(m.k_expectation) << "\n";
                os << "mode," << n << ",d2e," << exact(m.d2e) << "\n";
                os << "mode," << n << ",theta," << exact(m.theta) << "\n";
                os << "mode," << n << ",error_bound," << exact(m.entropy_error) << "\n";
                os << "mode," << n << ",M," << m.grid << "\n";
                os << "mode," << n << ",D," << m.repetitions << "\n";
            }
            os << "entropy,,s_vib," << exact(report.s_vib) << "\n";
            os << "entropy,,s_trans," << exact(report.s_trans) << "\n";
            os << "entropy,,s_rot," << exact(report.s_rot) << "\n";
            os << "entropy,,s_el," << exact(report.s_el) << "\n";
            os << "entropy,,total," << exact(report.total) << "\n";
            os << "entropy,,error_bound," << exact(report.error_bound) << "\n";
            for (const auto& [oracle, count] : report.queries.counts()) {
                os << "queries,," << csv_quote(oracle) << "," << count << "\n";
            }
            os << "metadata,,seed," << report.seed << "\n";
            os << "metadata,,method," << method_name(report.method) << "\n";
            os << "metadata,,wall_time_s," << exact(meta.wall_time_s) << "\n";
            break;
    }
    return os.str();
}

std::vector<DerivativeRow> derivative_table(const Job& job, const Limits& limits) {
    const SystemSpec& s = job.system;
    const EigenSystem eig = ground_state(s.h0, limits.dense_qubits);
    const double e0 = eig.ground_energy();
    const double step = default_step(eig);
    std::mt19937_64 master(job.seed);
    std::vector<DerivativeRow> rows;
    for (const VibrationalMode& m : s.modes) {
        const std::uint64_t mode_seed = master();
        if (m.perturbation.qubit_count() != s.h0.qubit_count()) {
            throw Error(ErrorCode::DimensionMismatch, "mode " + m.name + " acts on the wrong number of qubits");
        }
        if (!validate_perturbation(m.perturbation, eig, 1e-9 * std::max(1.0, lcu_weight(m.perturbation)))) {
            throw Error(ErrorCode::PerturbationInvalid, "mode " + m.name + " couples degenerate eigenstates");
        }
        DerivativeRow row;
        row.name = m.name;
        row.sum_formula = second_derivative_sum(m.perturbation, eig);
        row.finite_difference = finite_difference_d2(s.h0, m.perturbation, step, limits.dense_qubits);
        const DerivativeEstimate est = estimate_second_derivative(s.h0, m.perturbation, e0, s.kappa, s.epsilon,
                                                                  s.delta, m.k_prior, mode_seed, limits);
        row.simulated = est.value;
        row.simulated_error_bound = est.error_bound;
        row.max_deviation = std::max({std::abs(row.sum_formula - row.finite_difference),
                                      std::abs(row.sum_formula - row.simulated),
                                      std::abs(row.finite_difference - row.simulated)});
        rows.push_back(row);
    }
    return rows;
}

std::string format_derivatives(const std::vector<DerivativeRow>& rows, Format format) {
    std::ostringstream os;
    std::size_t worst = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].max_deviation > rows[worst].max_deviation) worst = i;
    }
    switch (format) {
        case Format::Json: {
            json arr = json::array();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const DerivativeRow& r = rows[i];
                arr.push_back({{"name", r.name},
                               {"sum_formula", r.sum_formula},
                               {"finite_difference", r.finite_difference},
                               {"simulated", r.simulated},
                               {"simulated_error_bound", r.simulated_error_bound},
                               {"max_deviation", r.max_deviation},
                               {"worst", i == worst}});
            }
            os << json{{"modes", arr}}.dump(2) << "\n";
            break;
        }
        case Format::Text:
            os << std::left << std::setw(16) << "mode" << std::right << std::setw(16) << "sum formula"
               << std::setw(16) << "finite diff" << std::setw(16) << "simulated" << std::setw(12) << "+/-"
               << std::setw(14) << "max dev" << "\n";
            os << std::setprecision(8);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const DerivativeRow& r = rows[i];
                os << std::left << std::setw(16) << r.name << std::right << std::setw(16) << r.sum_formula
                   << std::setw(16) << r.finite_difference << std::setw(16) << r.simulated << std::setw(12)
                   << std::setprecision(3) << r.simulated_error_bound << std::setw(14) << r.max_deviation
                   << std::setprecision(8) << (i == worst ? "  <- max" : "") << "\n";
            }
            break;
        case Format::Csv:
            os << "name,sum_formula,finite_difference,simulated,simulated_error_bound,max_deviation\n";
            for (const DerivativeRow& r : rows) {
                os << csv_quote(r.name) << "," << exact(r.sum_formula) << "," << exact(r.finite_difference) << ","
                   << exact(r.simulated) << "," << exact(r.simulated_error_bound) << "," << exact(r.max_deviation)
                   << "\n";
            }
            break;
    }
    return os.str();
}

CostGrid load_cost_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open params file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
    if (!doc.is_object()) fail("expected an object");
    CostGrid g;
    for (const auto& [key, value] : doc.items()) {
        if (key == "b_norm") {
            g.b_norm = number_list(doc, "b_norm");
        } else if (key == "kappa") {
            g.kappa = number_list(doc, "kappa");
        } else if (key == "epsilon") {
            g.epsilon = number_list(doc, "epsilon");
        } else if (key == "thetas") {
            g.thetas = number_list(doc, "thetas");
        } else if (key == "delta") {
            g.delta = number(doc, "delta");
        } else if (key == "k_min") {
            g.k_min = number(doc, "k_min");
        } else if (key == "k_max") {
            g.k_max = number(doc, "k_max");
        } else if (key == "mu_min") {
            g.mu_min = number(doc, "mu_min");
        } else if (key == "temperature") {
            g.temperature = number(doc, "temperature");
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    return g;
}

std::vector<std::pair<CostParams, CostTable>> evaluate_cost_grid(const CostGrid& grid) {
    std::vector<std::pair<CostParams, CostTable>> rows;
    for (double b : grid.b_norm) {
        for (double kappa : grid.kappa) {
            for (double eps : grid.epsilon) {
                CostParams p;
                p.b_norm = b;
                p.kappa = kappa;
                p.epsilon = eps;
                p.delta = grid.delta;
                p.k_min = grid.k_min;
                p.k_max = grid.k_max;
                p.mu_min = grid.mu_min;
                p.temperature = grid.temperature;
                p.thetas = grid.thetas;
                rows.emplace_back(p, query_cost(p));
            }
        }
    }
    return rows;
}

std::string format_costs(const std::vector<std::pair<CostParams, CostTable>>& rows, Format format) {
    std::ostringstream os;
    switch (format) {
        case Format::Json: {
            json arr = json::array();
            for (const auto& [p, t] : rows) {
                arr.push_back({{"b_norm", p.b_norm},
                               {"kappa", p.kappa},
                               {"epsilon", p.epsilon},
                               {"delta", p.delta},
                               {"k_min", p.k_min},
                               {"k_max", p.k_max},
                               {"mu_min", p.mu_min},
                               {"temperature", p.temperature},
                               {"z", t.z},
                               {"epsilon_prime", t.epsilon_prime},
                               {"epsilon_k", t.epsilon_k},
                               {"alpha", t.alpha},
                               {"epsilon_1", t.epsilon_1},
                               {"queries_uk", t.queries_uk},
                               {"queries_expectation", t.queries_expectation},
                               {"queries_total", t.queries_total},
                               {"queries_leading", t.queries_leading}});
            }
            os << json{{"costs", arr}}.dump(2) << "\n";
            break;
        }
        case Format::Text:
            os << std::right << std::setw(8) << "|b|" << std::setw(8) << "kappa" << std::setw(12) << "epsilon"
               << std::setw(13) << "eps_K" << std::setw(13) << "eps_1" << std::setw(13) << "N(U_K)" << std::setw(13)
               << "N(<K>)" << std::setw(13) << "total" << std::setw(13) << "leading" << "\n";
            os << std::setprecision(5);
            for (const auto& [p, t] : rows) {
                os << std::setw(8) << p.b_norm << std::setw(8) << p.kappa << std::setw(12) << p.epsilon
                   << std::setw(13) << t.epsilon_k << std::setw(13) << t.epsilon_1 << std::setw(13) << t.queries_uk
                   << std::setw(13) << t.queries_expectation << std::setw(13) << t.queries_total << std::setw(13)
                   << t.queries_leading << "\n";
            }
            break;
        case Format::Csv:
            os << "b_norm,kappa,epsilon,delta,k_min,k_max,mu_min,temperature,z,epsilon_prime,epsilon_k,alpha,"
                  "epsilon_1,queries_uk,queries_expectation,queries_total,queries_leading\n";
            for (const auto& [p, t] : rows) {
                for (double x : {p.b_norm, p.kappa, p.epsilon, p.delta, p.k_min, p.k_max, p.mu_min, p.temperature,
                                 t.z, t.epsilon_prime, t.epsilon_k, t.alpha, t.epsilon_1, t.queries_uk,
                                 t.queries_expectation, t.queries_total}) {
                    os << exact(x) << ",";
                }
                os << exact(t.queries_leading) << "\n";
            }
            break;
    }
    return os.str();
}

}  // namespace vibraq::cli
