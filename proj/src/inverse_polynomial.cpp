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
#include <numbers>
#include <string>

#include "vibraq/block_encoding.hpp"
#include "vibraq/errors.hpp"

namespace vibraq {

namespace {

// tail[n] = sum_{i=n}^{B} C(2B, B+i) / 4^B. The central term comes from
// lgamma; the rest follow from C(2B, B+i+1) / C(2B, B+i) = (B-i)/(B+i+1),
// which never leaves double range.
std::vector<double> binomial_tails(long long b) {
    std::vector<double> term(static_cast<std::size_t>(b + 1));
    const double bd = static_cast<double>(b);
    term[0] = std::exp(std::lgamma(2.0 * bd + 1.0) - 2.0 * std::lgamma(bd + 1.0) - 2.0 * bd * std::numbers::ln2);
    for (long long i = 0; i < b; ++i) {
        term[i + 1] = term[i] * static_cast<double>(b - i) / static_cast<double>(b + i + 1);
    }
    std::vector<double> tail(static_cast<std::size_t>(b + 2), 0.0);
    for (long long i = b; i >= 0; --i) tail[i] = tail[i + 1] + term[i];
    return tail;
}

}  // namespace

double InversePolynomial::evaluate(double x) const {
    // T_0 = 1, T_1 = x, T_{k+1} = 2x T_k - T_{k-1}; only odd orders are used.
    double t_prev = 1.0;
    double t_cur = x;
    double sum = coefficients.empty() ? 0.0 : coefficients[0] * t_cur;
    for (std::size_t n = 1; n < coefficients.size(); ++n) {
        for (int step = 0; step < 2; ++step) {
            const double next = 2.0 * x * t_cur - t_prev;
            t_prev = t_cur;
            t_cur = next;
        }
        sum += coefficients[n] * t_cur;
    }
    return sum;
}

double InversePolynomial::coefficient_sum() const {
    double s = 0.0;
    for (double c : coefficients) s += c;
    return s;
}

double InversePolynomial::abs_coefficient_sum() const {
    double s = 0.0;
    for (double c : coefficients) s += std::abs(c);
    return s;
}

double InversePolynomial::max_deviation(int points) const {
    const double lo = 1.0 / kappa;
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = points == 1 ? 1.0 : lo + (1.0 - lo) * static_cast<double>(i) / (points - 1);
        worst = std::max(worst, std::abs(evaluate(x) - 1.0 / x));
    }
    return worst;
}

InversePolynomial inverse_coefficients(double kappa, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(ErrorCode::InvalidPrecision, "epsilon must lie in (0, 1), got " + std::to_string(epsilon));
    }
    if (!(kappa >= 1.0) || !std::isfinite(kappa)) {
        throw Error(ErrorCode::InvalidPrecision, "kappa must be >= 1, got " + std::to_string(kappa));
    }
    const double log_term = std::log(2.0 * kappa / epsilon);
    const auto b = static_cast<long long>(std::ceil(kappa * kappa * log_term * log_term));
    const auto n_max = static_cast<long long>(std::ceil(std::sqrt(static_cast<double>(b) *
                                                                  std::log(8.0 * static_cast<double>(b) / epsilon))));
    const auto tail = binomial_tails(b);

    InversePolynomial poly;
    poly.B = b;
    poly.degree_bound = n_max;
    poly.kappa = kappa;
    poly.epsilon = epsilon;
    poly.coefficients.resize(static_cast<std::size_t>(n_max + 1));
    for (long long n = 0; n <= n_max; ++n) {
        const double s = n + 1 <= b ? tail[n + 1] : 0.0;
        poly.coefficients[n] = (n % 2 == 0 ? 4.0 : -4.0) * s;
    }
    return poly;
}

}  // namespace vibraq
