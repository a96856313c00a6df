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

#include <gtest/gtest.h>

#include "support.hpp"
#include "vibraq/errors.hpp"
#include "vibraq/estimation.hpp"

namespace vibraq {
namespace {

using namespace testing;

CostParams base_params() {
    CostParams p;
    p.b_norm = 1.0;
    p.kappa = 2.0;
    p.epsilon = 1e-4;
    p.delta = 0.1;
    p.k_min = 0.01;
    p.k_max = 0.02;
    p.mu_min = 1.0;
    p.temperature = 1.0;
    p.thetas = {1.0};
    return p;
}

TEST(LambertW, PrincipalBranchInvertsWeW) {
    Rng rng(61);
    EXPECT_DOUBLE_EQ(lambert_w0(0.0), 0.0);
    EXPECT_NEAR(lambert_w0(std::numbers::e), 1.0, 1e-12);
    EXPECT_NEAR(lambert_w0(-1.0 / std::numbers::e), -1.0, 1e-6);
    for (int trial = 0; trial < 500; ++trial) {
        const double x = trial % 2 ? uniform(rng, -1.0 / std::numbers::e, 0.0) : std::exp(uniform(rng, -20, 20));
        const double w = lambert_w0(x);
        EXPECT_GE(w, -1.0 - 1e-9);
        EXPECT_NEAR(w * std::exp(w), x, 1e-10 * std::max(1.0, std::abs(x)));
    }
}

TEST(LambertW, LowerBranchInvertsWeW) {
    Rng rng(62);
    EXPECT_NEAR(lambert_wm1(-1.0 / std::numbers::e), -1.0, 1e-6);
    // W_-1(-ln 2 / 2) = -2 ln 2.
    EXPECT_NEAR(lambert_wm1(-std::log(2.0) / 2.0), -2.0 * std::log(2.0), 1e-12);
    for (int trial = 0; trial < 500; ++trial) {
        const double x = -std::exp(uniform(rng, -40.0, -1.0 - 1e-6));
        const double w = lambert_wm1(x);
        EXPECT_LE(w, -1.0 + 1e-9);
        EXPECT_NEAR(w * std::exp(w), x, 1e-10 * std::abs(x));
    }
}

TEST(LambertW, DomainErrors) {
    EXPECT_THROW(lambert_w0(-1.0), Error);
    EXPECT_THROW(lambert_wm1(0.5), Error);
    EXPECT_THROW(lambert_wm1(0.0), Error);
    EXPECT_THROW(lambert_wm1(-1.0), Error);
}

TEST(QueryCost, IntermediateQuantities) {
    CostParams p = base_params();
    p.thetas = {1.0, 2.0};
    p.mu_min = 4.0;
    const CostTable t = query_cost(p);
    const double z = 1.0 / std::expm1(0.5) + 1.0 / std::expm1(1.0);
    EXPECT_NEAR(t.z, z, 1e-14);
    EXPECT_NEAR(t.epsilon_prime, p.epsilon * p.temperature / z, 1e-18);
    EXPECT_NEAR(t.epsilon_k, t.epsilon_prime * 2.0, 1e-18);
    EXPECT_DOUBLE_EQ(t.alpha, 2.0);
    // eps_1 solves alpha eps_1 log(1 / eps_1) = eps_K on the small branch.
    EXPECT_NEAR(t.alpha * t.epsilon_1 * std::log(1.0 / t.epsilon_1), t.epsilon_k, 1e-10 * t.epsilon_k);
    EXPECT_LT(t.epsilon_1, 1.0 / std::numbers::e);
    EXPECT_NEAR(t.queries_uk, t.alpha * std::log(t.alpha / t.epsilon_1), 1e-9 * t.queries_uk);
    const double spread = std::sqrt((0.5 + p.k_max / (2.0 * t.alpha)) * (0.5 - p.k_min / (2.0 * t.alpha)));
    EXPECT_NEAR(t.queries_expectation,
                t.alpha * std::log(1.0 / p.delta) / t.epsilon_1 * (spread + std::sqrt(t.epsilon_1 / t.alpha)),
                1e-9 * t.queries_expectation);
    EXPECT_NEAR(t.queries_total, t.queries_uk * t.queries_expectation, 1e-9 * t.queries_total);
}

TEST(QueryCost, LeadingTermScaling) {
    const CostParams p = base_params();
    const double base = query_cost(p).queries_leading;
    CostParams pk = p;
    pk.kappa = 4.0;
    CostParams pe = p;
    pe.epsilon = 5e-5;
    CostParams pb = p;
    pb.b_norm = 2.0;
    EXPECT_NEAR(query_cost(pk).queries_leading / base, 4.0, 0.4);
    EXPECT_NEAR(query_cost(pe).queries_leading / base, 2.0, 0.2);
    EXPECT_GT(query_cost(pb).queries_leading, base);
}

TEST(QueryCost, MonotoneInEveryDifficultyParameter) {
    Rng rng(63);
    for (int trial = 0; trial < 100; ++trial) {
        CostParams p = base_params();
        p.kappa = uniform(rng, 1.0, 10.0);
        p.epsilon = std::pow(10.0, uniform(rng, -6, -3));
        const CostTable t = query_cost(p);
        CostParams harder = p;
        harder.kappa *= 1.5;
        EXPECT_GT(query_cost(harder).queries_total, t.queries_total);
        harder = p;
        harder.epsilon /= 2.0;
        EXPECT_GT(query_cost(harder).queries_total, t.queries_total);
        harder = p;
        harder.delta /= 10.0;
        EXPECT_GT(query_cost(harder).queries_total, t.queries_total);
    }
}

TEST(QueryCost, Preconditions) {
    auto expect_violation = [](CostParams p) {
        try {
            query_cost(p);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
        }
    };
    CostParams p = base_params();
    p.kappa = 0.5;
    expect_violation(p);
    p = base_params();
    p.k_min = 0.03;
    expect_violation(p);
    p = base_params();
    p.epsilon = -1.0;
    expect_violation(p);
    p = base_params();
    p.thetas = {};
    expect_violation(p);
    p = base_params();
    p.epsilon = 0.5;  // eps_K would exceed k_min / 2
    expect_violation(p);
}

}  // namespace
}  // namespace vibraq
