// Copyright 2026 The singlet-sim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file statistics.hpp
 * Estimators and goodness-of-fit checks linking Monte Carlo runs to the
 * exact oracles.
 */
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spin.hpp"

namespace singlet {

struct CorrelationEstimate {
    double mean{0.0};
    /// Sample standard deviation (n - 1 denominator) over sqrt(n).
    double std_error{0.0};
    std::int64_t n_trials{0};
};

/**
 * @brief Associative partial sums of alpha * beta.
 *
 * Products are kept as integers (2 alpha)(2 beta), so merging worker
 * partials in any order gives bit-identical estimates.
 */
struct ProductMoments {
    std::int64_t count{0};
    std::int64_t sum{0};
    __int128 sum_sq{0};

    void add(HalfInteger alpha, HalfInteger beta) {
        const std::int64_t p = static_cast<std::int64_t>(alpha.twice) * beta.twice;
        ++count;
        sum += p;
        sum_sq += static_cast<__int128>(p) * p;
    }
    void merge(const ProductMoments &o) {
        count += o.count;
        sum += o.sum;
        sum_sq += o.sum_sq;
    }
    /// @throws std::invalid_argument when count < 2.
    [[nodiscard]] CorrelationEstimate estimate() const;

    friend bool operator==(const ProductMoments &, const ProductMoments &) = default;
};

/// @throws std::invalid_argument for fewer than two samples.
[[nodiscard]] CorrelationEstimate
estimate_correlation(std::span<const std::pair<HalfInteger, HalfInteger>> samples);

struct UniformityReport {
    std::vector<std::int64_t> counts;
    double chi_square{0.0};
    int degrees_of_freedom{0};
    double p_value{1.0};
};

/// Pearson chi-square against equal cell probabilities.
/// @throws std::invalid_argument for < 2 cells or a zero total.
[[nodiscard]] UniformityReport chi_square_uniform(std::span<const std::int64_t> counts);

/**
 * @brief |mean - target| / std_error.
 *
 * A zero standard error gives 0 when mean == target and +infinity
 * otherwise, so a degenerate estimate that misses its target always fails a
 * finite threshold.
 */
[[nodiscard]] double z_test(const CorrelationEstimate &estimate, double target);

/// Regularized lower incomplete gamma P(a, x).
[[nodiscard]] double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
[[nodiscard]] double gamma_q(double a, double x);
/// Upper tail of the chi-square distribution.
[[nodiscard]] double chi_square_sf(double statistic, int dof);

/// Standard error sqrt(p(1 - p)/n) of a proportion.
[[nodiscard]] double proportion_std_error(double p, std::int64_t n);

} // namespace singlet
