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

#include <cmath>
#include <numbers>
#include <string>

#include "vibraq/errors.hpp"
#include "vibraq/estimation.hpp"

namespace vibraq {

namespace {

constexpr double kInvE = 0.36787944117144233;

double halley(double x, double w) {
    for (int it = 0; it < 100; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0) break;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (std::abs(step) <= 1e-12 * (1.0 + std::abs(w))) break;
    }
    return w;
}

// Series about the branch point x = -1/e in p = sqrt(2 (e x + 1)); the
// lower branch takes -p.
double branch_point_guess(double x, double sign) {
    const double p = sign * std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
}

}  // namespace

double lambert_w0(double x) {
    if (!(x >= -kInvE - 1e-15) || !std::isfinite(x)) {
        throw Error(ErrorCode::PreconditionViolated, "W_0 is undefined below -1/e");
    }
    if (x == 0.0) return 0.0;
    if (x <= -kInvE) return -1.0;
    double w;
    if (x < -0.25) {
        w = branch_point_guess(x, 1.0);
    } else if (x < 3.0) {
        w = std::log1p(x);
    } else {
        const double l = std::log(x);
        w = l - std::log(l);
    }
    return halley(x, w);
}

double lambert_wm1(double x) {
    if (!(x >= -kInvE - 1e-15 && x < 0.0)) {
        throw Error(ErrorCode::PreconditionViolated, "W_-1 is defined on [-1/e, 0) only");
    }
    if (x <= -kInvE) return -1.0;
    double w;
    if (x < -0.25) {
        w = branch_point_guess(x, -1.0);
    } else {
        const double l = std::log(-x);
        w = l - std::log(-l);
    }
    return halley(x, w);
}

CostTable query_cost(const CostParams& p) {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw Error(ErrorCode::PreconditionViolated, what);
    };
    require(p.b_norm > 0.0, "|b| must be positive");
    require(p.kappa >= 1.0, "kappa must be >= 1");
    require(p.epsilon > 0.0, "epsilon must be positive");
    require(p.delta > 0.0 && p.delta < 1.0, "delta must lie in (0, 1)");
    require(p.mu_min > 0.0, "mu_min must be positive");
    require(p.temperature > 0.0, "temperature must be positive");
    require(!p.thetas.empty(), "at least one theta is needed");
    require(p.k_min > 0.0 && p.k_min <= p.k_max, "need 0 < k_min <= k_max");

    CostTable t;
    for (double theta : p.thetas) {
        require(theta > 0.0, "theta values must be positive");
        t.z += 1.0 / std::expm1(theta / (2.0 * p.temperature));
    }
    t.epsilon_prime = p.epsilon * p.temperature / t.z;
    t.epsilon_k = t.epsilon_prime * std::sqrt(p.mu_min);
    require(t.epsilon_k < p.k_min / 2.0, "error on <K> must stay below k_min / 2");

    t.alpha = p.b_norm * p.b_norm * p.kappa;
    require(p.k_max <= t.alpha, "k_max exceeds |b|^2 kappa");
    // eps_1 = -eps / (c W(-eps / c)) on the branch that keeps eps_1 below
    // eps / c; past the branch point the argument is clamped to -1/e.
    const double arg = -t.epsilon_k / t.alpha;
    const double w = arg <= -kInvE ? -1.0 : lambert_wm1(arg);
    t.epsilon_1 = -t.epsilon_k / (t.alpha * w);
    t.queries_uk = t.alpha * std::log(t.alpha / t.epsilon_1);

    const double log_delta = std::log(1.0 / p.delta);
    const double spread =
        std::sqrt((0.5 + p.k_max / (2.0 * t.alpha)) * (0.5 - p.k_min / (2.0 * t.alpha)));
    t.queries_expectation =
        t.alpha * log_delta / t.epsilon_1 * (spread + std::sqrt(t.epsilon_1 / t.alpha));
    t.queries_total = t.queries_uk * t.queries_expectation;

    const double b4k2 = t.alpha * t.alpha;
    const double scale = p.epsilon * p.temperature * std::sqrt(p.mu_min) / t.z;
    t.queries_leading = b4k2 * log_delta / scale * (spread + std::sqrt(scale / b4k2));
    return t;
}

}  // namespace vibraq
