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

#include "vibraq/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "vibraq/errors.hpp"
#include "vibraq/oracle.hpp"

namespace vibraq {

PhysicalConstants constants_for(UnitSystem units) {
    if (units == UnitSystem::Natural) return {1.0, 1.0, 1.0};
    constexpr double h = 6.62607015e-34;
    return {h, h / (2.0 * std::numbers::pi), 1.380649e-23};
}

const char* unit_system_name(UnitSystem units) { return units == UnitSystem::Natural ? "natural" : "si"; }

void ThermoConfig::validate() const {
    auto positive = [](double x, const char* what) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw Error(ErrorCode::PreconditionViolated, std::string(what) + " must be positive");
        }
    };
    positive(temperature, "temperature");
    positive(pressure, "pressure");
    positive(mass, "mass");
    if (sigma_r < 1) throw Error(ErrorCode::PreconditionViolated, "sigma_r must be a positive integer");
    for (double t : theta_rot) positive(t, "theta_rot");
}

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Exact:
            return "exact";
        case Provenance::Simulated:
            return "simulated";
        case Provenance::FiniteDifference:
            return "finite_difference";
    }
    return "unknown";
}

SpringConstant spring_constant(double d2e, Provenance provenance) { return {d2e, provenance}; }

double characteristic_temperature(double k, double mu, const ThermoConfig& cfg) {
    if (!(mu > 0.0)) throw Error(ErrorCode::PreconditionViolated, "reduced mass must be positive");
    if (!(k > 0.0)) {
        std::ostringstream msg;
        msg << "spring constant " << k << " is not positive (imaginary frequency)";
        throw Error(ErrorCode::UnstableMode, msg.str());
    }
    const PhysicalConstants c = constants_for(cfg.units);
    return c.hbar / c.k_b * std::sqrt(k / mu);
}

double vibrational_summand(double x) {
    if (x < 1e-8) return 1.0 - std::log(x);
    // x / (e^x - 1) - ln(1 - e^-x), both terms underflow gracefully.
    return x / std::expm1(x) - std::log1p(-std::exp(-x));
}

double vibrational_entropy(const std::vector<double>& thetas, double temperature) {
    if (!(temperature > 0.0)) throw Error(ErrorCode::PreconditionViolated, "temperature must be positive");
    double s = 0.0;
    for (double theta : thetas) {
        if (!(theta > 0.0)) throw Error(ErrorCode::PreconditionViolated, "theta must be positive");
        s += vibrational_summand(theta / temperature);
    }
    return s;
}

double translational_entropy(const ThermoConfig& cfg) {
    const PhysicalConstants c = constants_for(cfg.units);
    const double kt = c.k_b * cfg.temperature;
    const double thermal = 2.0 * std::numbers::pi * cfg.mass * kt / (c.h * c.h);
    return 1.5 * std::log(thermal) + std::log(kt / cfg.pressure) + 2.5;
}

double rotational_entropy(const ThermoConfig& cfg) {
    const double largest = *std::max_element(cfg.theta_rot.begin(), cfg.theta_rot.end());
    if (cfg.temperature < largest) {
        std::cerr << "warning: temperature " << cfg.temperature << " is below the rotational temperature " << largest
                  << "; the rotational term assumes T is large\n";
    }
    const double prod = cfg.theta_rot[0] * cfg.theta_rot[1] * cfg.theta_rot[2];
    return std::log(std::sqrt(std::numbers::pi) * std::pow(cfg.temperature, 1.5) / (cfg.sigma_r * std::sqrt(prod))) +
           1.5;
}

double electronic_entropy() { return 0.0; }

double total_entropy(const ThermoConfig& cfg, double s_vib) {
    return s_vib + translational_entropy(cfg) + rotational_entropy(cfg) + electronic_entropy();
}

double merged_total_entropy(const ThermoConfig& cfg, double s_vib) {
    const PhysicalConstants c = constants_for(cfg.units);
    const double t = cfg.temperature;
    const double prod = cfg.theta_rot[0] * cfg.theta_rot[1] * cfg.theta_rot[2];
    const double first = 2.0 * std::numbers::pi * cfg.mass * c.k_b * t * t / (c.h * c.h);
    const double second = std::sqrt(std::numbers::pi) * c.k_b * t / (cfg.sigma_r * cfg.pressure * std::sqrt(prod));
    return s_vib + 1.5 * std::log(first) + std::log(second) + 4.0;
}

ErrorBudget error_budget(double epsilon, double temperature, const std::vector<double>& thetas) {
    if (!(temperature > 0.0)) throw Error(ErrorCode::PreconditionViolated, "temperature must be positive");
    if (!(epsilon > 0.0)) throw Error(ErrorCode::PreconditionViolated, "epsilon must be positive");
    if (thetas.empty()) throw Error(ErrorCode::PreconditionViolated, "error budget needs at least one mode");
    ErrorBudget b;
    double min_theta = std::numeric_limits<double>::infinity();
    for (double theta : thetas) {
        if (!(theta > 0.0)) throw Error(ErrorCode::PreconditionViolated, "theta must be positive");
        b.z += 1.0 / std::expm1(theta / (2.0 * temperature));
        min_theta = std::min(min_theta, theta);
    }
    if (!(epsilon < min_theta / 2.0)) {
        throw Error(ErrorCode::PreconditionViolated, "epsilon must be below min theta / 2");
    }
    b.epsilon_prime = epsilon * temperature / b.z;
    b.theta_tolerance = std::min(0.4 * b.epsilon_prime, min_theta / 2.0);
    return b;
}

double summand_error_bound(double theta_error, double theta, double temperature) {
    return 5.0 * theta_error / (2.0 * temperature * std::expm1(theta / (2.0 * temperature)));
}

namespace {

double default_prior_bound(const LcuOperator& h0, const LcuOperator& v, double e0, double kappa) {
    const double b = lcu_weight(v);
    const double a = lcu_weight(shifted_hamiltonian(h0, e0));
    return a > 0.0 ? b * b * kappa / a : 0.0;
}

}  // namespace

DerivativeEstimate estimate_second_derivative(const LcuOperator& h0, const LcuOperator& v, double e0, double kappa,
                                              double epsilon, double delta,
                                              std::optional<std::pair<double, double>> k_prior, std::uint64_t seed,
                                              const Limits& limits) {
    if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidPrecision, "epsilon must be positive");
    const EigenSystem eig = ground_state(h0, limits.dense_qubits);
    const auto prior = k_prior.value_or(std::make_pair(-default_prior_bound(h0, v, e0, kappa), 0.0));
    if (!(prior.first <= prior.second)) throw Error(ErrorCode::InvalidBounds, "k_prior has min > max");
    const double eps_k = epsilon / 2.0;
    PseudoInverseOptions pio;
    pio.cap = limits.dense_qubits;
    BlockEncoding enc = encode_k(v, h0, e0, kappa, eps_k / 2.0, pio);
    const double alpha = enc.alpha;
    const PriorBounds bounds{std::max(prior.first - eps_k / 2.0, -alpha), std::min(prior.second + eps_k / 2.0, alpha),
                             alpha};
    const ExpectationEstimator est(make_hadamard_instance(std::move(enc), eig.ground_vector()), bounds, eps_k / 2.0,
                                   delta, limits);
    const EstimateReport r = est.run(seed);
    DerivativeEstimate out;
    out.k_expectation = std::clamp(r.value, prior.first, prior.second);
    out.value = 2.0 * out.k_expectation;
    out.error_bound = 2.0 * (eps_k / 2.0 + r.error_bound);
    out.alpha = alpha;
    out.grid = r.m;
    out.repetitions = r.d;
    out.queries = r.queries;
    return out;
}

const char* method_name(EstimationMethod m) { return m == EstimationMethod::Exact ? "exact" : "simulated"; }

struct EntropyEstimator::Impl {
    struct Mode {
        ModeResult base;
        double exact_k = 0.0;
        bool exact_stable = false;
        double exact_theta = 0.0;
        // Simulated pipeline.
        std::optional<ExpectationEstimator> estimator;
        double prior_lo = 0.0;
        double prior_hi = 0.0;
        double eps_enc = 0.0;
        double k_lo = 0.0;
        double theta_lo = 0.0;
    };

    SystemSpec spec;
    EstimationMethod method;
    double e0 = 0.0;
    double s_trans = 0.0;
    double s_rot = 0.0;
    std::vector<Mode> modes;
};

EntropyEstimator::EntropyEstimator(const SystemSpec& spec, EstimationMethod method, const EntropyOptions& options)
    : impl_(std::make_unique<Impl>()) {
    Impl& im = *impl_;
    im.spec = spec;
    im.method = method;
    spec.thermo.validate();
    if (!(spec.epsilon > 0.0)) throw Error(ErrorCode::InvalidPrecision, "epsilon must be positive");
    if (!(spec.delta > 0.0 && spec.delta < 1.0)) throw Error(ErrorCode::InvalidPrecision, "delta must lie in (0, 1)");

    const int cap = options.limits.dense_qubits;
    const EigenSystem eig = ground_state(spec.h0, cap);
    im.e0 = eig.ground_energy();
    if (spec.e0 && std::abs(*spec.e0 - im.e0) > 1e-8 * std::max(1.0, std::abs(im.e0))) {
        std::ostringstream msg;
        msg << "supplied e0 = " << *spec.e0 << " differs from the ground energy " << im.e0;
        throw Error(ErrorCode::PreconditionViolated, msg.str());
    }
    im.s_trans = translational_entropy(spec.thermo);
    im.s_rot = rotational_entropy(spec.thermo);
    const PhysicalConstants pc = constants_for(spec.thermo.units);
    const double c = pc.hbar / pc.k_b;
    const double temp = spec.thermo.temperature;

    for (const VibrationalMode& vm : spec.modes) {
        if (vm.perturbation.qubit_count() != spec.h0.qubit_count()) {
            throw Error(ErrorCode::DimensionMismatch, "mode " + vm.name + " acts on the wrong number of qubits");
        }
        if (!(vm.mu > 0.0)) throw Error(ErrorCode::PreconditionViolated, "mode " + vm.name + " needs mu > 0");
        if (!validate_perturbation(vm.perturbation, eig, 1e-9 * std::max(1.0, lcu_weight(vm.perturbation)))) {
            throw Error(ErrorCode::PerturbationInvalid, "mode " + vm.name + " couples degenerate eigenstates");
        }
        Impl::Mode m;
        m.base.name = vm.name;
        m.exact_k = exact_k_expectation(spec.h0, vm.perturbation, eig, cap);
        const double exact_d2e = vm.curvature_offset + 2.0 * m.exact_k;
        m.exact_stable = exact_d2e > 0.0;
        if (m.exact_stable) m.exact_theta = characteristic_temperature(exact_d2e, vm.mu, spec.thermo);

        auto unstable = [&](double d2e) {
            if (!options.allow_exclude) {
                std::ostringstream msg;
                msg << "mode " << vm.name << " has spring constant " << d2e
                    << " <= 0; the geometry is not at a minimum (pass --allow-exclude to drop it)";
                throw Error(ErrorCode::UnstableMode, msg.str());
            }
            m.base.excluded = true;
            m.base.d2e = d2e;
            m.base.k = spring_constant(d2e, method == EstimationMethod::Exact ? Provenance::Exact
                                                                               : Provenance::Simulated);
        };

        if (method == EstimationMethod::Exact) {
            m.base.k_expectation = m.exact_k;
            if (!m.exact_stable) {
                unstable(exact_d2e);
            } else {
                m.base.d2e = exact_d2e;
                m.base.k = spring_constant(exact_d2e, Provenance::Exact);
                m.base.theta = m.exact_theta;
            }
            im.modes.push_back(std::move(m));
            continue;
        }

        const double norm_bound = default_prior_bound(spec.h0, vm.perturbation, im.e0, spec.kappa);
        const auto prior = vm.k_prior.value_or(std::make_pair(-norm_bound, 0.0));
        if (!(prior.first <= prior.second)) {
            throw Error(ErrorCode::InvalidBounds, "mode " + vm.name + " has k_prior with min > max");
        }
        m.prior_lo = prior.first;
        m.prior_hi = prior.second;
        const double hi = vm.curvature_offset + 2.0 * prior.second;
        m.k_lo = vm.curvature_offset + 2.0 * prior.first;
        if (hi <= 0.0) {
            unstable(hi);
        } else if (m.k_lo <= 0.0) {
            throw Error(ErrorCode::PreconditionViolated,
                        "mode " + vm.name + ": prior on <K> does not keep the spring constant positive");
        } else {
            m.theta_lo = characteristic_temperature(m.k_lo, vm.mu, spec.thermo);
        }
        im.modes.push_back(std::move(m));
    }
    if (method == EstimationMethod::Exact) return;

    // Split the S error over modes through Z at the lowest admissible theta,
    // then push each theta tolerance back to an error on <K>.
    double z_up = 0.0;
    int active = 0;
    for (const auto& m : im.modes) {
        if (m.base.excluded) continue;
        z_up += 1.0 / std::expm1(m.theta_lo / (2.0 * temp));
        ++active;
    }
    if (active == 0) return;
    const double delta_mode = spec.delta / active;
    for (std::size_t i = 0; i < im.modes.size(); ++i) {
        auto& m = im.modes[i];
        if (m.base.excluded) continue;
        const VibrationalMode& vm = spec.modes[i];
        const double theta_tol = std::min(0.4 * spec.epsilon * temp / z_up, m.theta_lo / 2.0);
        // |theta~ - theta| <= c |k~ - k| / sqrt(mu k_lo) when both are >= k_lo.
        const double eps_spring = theta_tol * std::sqrt(vm.mu * m.k_lo) / c;
        const double eps_k = eps_spring / 2.0;
        m.eps_enc = eps_k / 2.0;
        PseudoInverseOptions pio;
        pio.cap = cap;
        BlockEncoding enc = encode_k(vm.perturbation, spec.h0, im.e0, spec.kappa, m.eps_enc, pio);
        const double alpha = enc.alpha;
        const double lo = std::max(m.prior_lo - m.eps_enc, -alpha);
        const double hi = std::min(m.prior_hi + m.eps_enc, alpha);
        m.base.alpha = alpha;
        m.estimator.emplace(make_hadamard_instance(std::move(enc), eig.ground_vector()), PriorBounds{lo, hi, alpha},
                            eps_k / 2.0, delta_mode, options.limits);
        m.base.grid = m.estimator->grid();
        m.base.repetitions = m.estimator->repetitions();
    }
}

EntropyEstimator::~EntropyEstimator() = default;
EntropyEstimator::EntropyEstimator(EntropyEstimator&&) noexcept = default;
EntropyEstimator& EntropyEstimator::operator=(EntropyEstimator&&) noexcept = default;

EntropyReport EntropyEstimator::run(std::uint64_t seed) const {
    const Impl& im = *impl_;
    const PhysicalConstants pc = constants_for(im.spec.thermo.units);
    const double c = pc.hbar / pc.k_b;
    const double temp = im.spec.thermo.temperature;

    EntropyReport r;
    r.method = im.method;
    r.seed = seed;
    r.e0 = im.e0;
    r.s_trans = im.s_trans;
    r.s_rot = im.s_rot;
    r.s_el = electronic_entropy();
    r.delta = im.method == EstimationMethod::Exact ? 0.0 : im.spec.delta;

    std::mt19937_64 master(seed);
    std::vector<double> thetas;
    for (std::size_t i = 0; i < im.modes.size(); ++i) {
        const auto& m = im.modes[i];
        const std::uint64_t mode_seed = master();
        ModeResult res = m.base;
        if (!res.excluded && m.estimator) {
            const VibrationalMode& vm = im.spec.modes[i];
            const EstimateReport est = m.estimator->run(mode_seed);
            // The true <K> lies in the prior, so clamping cannot move away from it.
            res.k_expectation = std::clamp(est.value, m.prior_lo, m.prior_hi);
            res.d2e = vm.curvature_offset + 2.0 * res.k_expectation;
            res.k = spring_constant(res.d2e, Provenance::Simulated);
            res.theta = characteristic_temperature(res.d2e, vm.mu, im.spec.thermo);
            res.k_error = 2.0 * (m.eps_enc + est.error_bound);
            res.theta_error = c * res.k_error / std::sqrt(vm.mu * m.k_lo);
            res.entropy_error = summand_error_bound(res.theta_error, m.theta_lo, temp);
            res.queries = est.queries;
        }
        if (!res.excluded) {
            thetas.push_back(res.theta);
            r.error_bound += res.entropy_error;
            r.queries.merge(res.queries);
        }
        r.modes.push_back(std::move(res));
    }
    r.s_vib = vibrational_entropy(thetas, temp);
    r.total = r.s_vib + r.s_trans + r.s_rot + r.s_el;
    return r;
}

double EntropyEstimator::exact_total() const {
    const Impl& im = *impl_;
    std::vector<double> thetas;
    for (const auto& m : im.modes) {
        if (m.exact_stable && !m.base.excluded) thetas.push_back(m.exact_theta);
    }
    return vibrational_entropy(thetas, im.spec.thermo.temperature) + im.s_trans + im.s_rot + electronic_entropy();
}

EntropyReport estimate_entropy(const SystemSpec& spec, EstimationMethod method, std::uint64_t seed,
                               const EntropyOptions& options) {
    return EntropyEstimator(spec, method, options).run(seed);
}

}  // namespace vibraq
