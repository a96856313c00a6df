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

#include <gtest/gtest.h>

#include "support.hpp"
#include "vibraq/block_encoding.hpp"
#include "vibraq/errors.hpp"

namespace vibraq {
namespace {

using namespace testing;

// C(n, k) by the multiplicative formula; exact in double for n <= 60.
double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

TEST(InverseCoefficients, DegreeParameters) {
    // kappa = 2, eps = 1e-2: B = ceil(4 ln^2 400) = 144 and
    // N = ceil(sqrt(144 ln(8 * 144 / 0.01))) = 41.
    const InversePolynomial p = inverse_coefficients(2.0, 1e-2);
    EXPECT_EQ(p.B, 144);
    EXPECT_EQ(p.degree_bound, 41);
    EXPECT_EQ(p.coefficients.size(), 42u);
    EXPECT_EQ(p.polynomial_degree(), 83);
}

TEST(InverseCoefficients, MatchesBinomialTailFormula) {
    const InversePolynomial p = inverse_coefficients(1.5, 0.2);
    ASSERT_LE(p.B, 30);
    const int b = static_cast<int>(p.B);
    const double norm = std::pow(2.0, 2 * b);
    for (std::size_t n = 0; n < p.coefficients.size(); ++n) {
        double tail = 0.0;
        for (int i = static_cast<int>(n) + 1; i <= b; ++i) tail += binomial(2 * b, b + i);
        const double expected = (n % 2 == 0 ? 4.0 : -4.0) * tail / norm;
        EXPECT_NEAR(p.coefficients[n], expected, 1e-13) << "n = " << n;
    }
}

TEST(InverseCoefficients, UntruncatedExpansionIsTheSmoothedInverse) {
    // With N >= B - 1 nothing is truncated, so g(x) = (1 - (1 - x^2)^B) / x.
    const InversePolynomial p = inverse_coefficients(1.0, 0.5);
    ASSERT_GE(p.degree_bound, p.B - 1);
    for (int i = 1; i <= 200; ++i) {
        const double x = -1.0 + 2.0 * i / 201.0;
        const double expected = (1.0 - std::pow(1.0 - x * x, static_cast<double>(p.B))) / x;
        EXPECT_NEAR(p.evaluate(x), expected, 1e-12);
    }
}

TEST(InverseCoefficients, OddAndAccurate) {
    Rng rng(41);
    for (double kappa : {1.0, 1.7, 3.0, 5.5}) {
        for (double eps : {0.1, 1e-2, 1e-3}) {
            const InversePolynomial p = inverse_coefficients(kappa, eps);
            EXPECT_LE(p.max_deviation(1000), eps);
            EXPECT_NEAR(p.coefficient_sum(), p.evaluate(1.0), 1e-12);
            EXPECT_LE(p.coefficient_sum(), 4.0 * static_cast<double>(p.degree_bound));
            for (int t = 0; t < 20; ++t) {
                const double x = uniform(rng, -1.0, 1.0);
                EXPECT_NEAR(p.evaluate(-x), -p.evaluate(x), 1e-12);
                // Chebyshev series agrees with the trigonometric definition.
                double trig = 0.0;
                for (std::size_t n = 0; n < p.coefficients.size(); ++n) {
                    trig += p.coefficients[n] * std::cos(static_cast<double>(2 * n + 1) * std::acos(x));
                }
                EXPECT_NEAR(p.evaluate(x), trig, 1e-9);
            }
            EXPECT_LE(std::abs(p.evaluate(0.3)), p.abs_coefficient_sum());
        }
    }
}

TEST(InverseCoefficients, RejectsBadArguments) {
    for (auto [kappa, eps] : {std::pair{2.0, 0.0}, {2.0, 1.0}, {0.5, 0.1}, {2.0, -1.0}}) {
        try {
            inverse_coefficients(kappa, eps);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidPrecision);
        }
    }
}

}  // namespace
}  // namespace vibraq
