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
 * @file enumeration.hpp
 * Exact output statistics of the protocol by finite enumeration.
 *
 * Per chain step the pair (x_k, y_k) = (Sgn(a.lambda_k),
 * Sgn(b.(lambda_k + c_k mu_k))) takes values in {+1, -1}^2. Both components
 * have zero mean and E[x_k y_k] = a.b, and pairs at different steps are
 * independent. For two +-1 variables the four cell probabilities are fixed by
 * the two means and the product moment:
 *
 *     P(x, y) = (1 + x E[x] + y E[y] + x y E[xy]) / 4 = (1 + x y cos_ab) / 4.
 *
 * The f-bit of an integer step with bias p is +1 with probability
 * (1 + p) / 2 and is shared by both parties. Summing over all 4^n 2^L
 * configurations gives the exact joint law of (alpha, beta). The pair law is
 * checked against Monte Carlo in the test suite.
 */
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "spin.hpp"

namespace singlet {

using OutcomePair = std::pair<HalfInteger, HalfInteger>;

struct DistributionTable {
    std::map<HalfInteger, Rational> entries;

    [[nodiscard]] Rational total() const;
    [[nodiscard]] Rational probability(HalfInteger v) const;
};

struct JointDistribution {
    std::map<OutcomePair, double> entries;
    double cos_ab{0.0};

    [[nodiscard]] double total() const;
    [[nodiscard]] double probability(HalfInteger alpha, HalfInteger beta) const;
    [[nodiscard]] std::map<HalfInteger, double> marginal_alpha() const;
    [[nodiscard]] std::map<HalfInteger, double> marginal_beta() const;
    /// sum alpha * beta * P(alpha, beta).
    [[nodiscard]] double correlation() const;
};

struct ExactJointDistribution {
    std::map<OutcomePair, Rational> entries;
    Rational cos_ab;

    [[nodiscard]] Rational total() const;
    [[nodiscard]] Rational correlation() const;
    [[nodiscard]] std::map<HalfInteger, Rational> marginal_alpha() const;
    [[nodiscard]] std::map<HalfInteger, Rational> marginal_beta() const;
    [[nodiscard]] JointDistribution to_real() const;
};

/// Alice's exact output law.
[[nodiscard]] DistributionTable exact_marginal(const BinaryChain &chain);

/// @throws std::invalid_argument for cos_ab outside [-1, 1].
[[nodiscard]] JointDistribution exact_joint(const BinaryChain &chain,
                                            double cos_ab);
[[nodiscard]] ExactJointDistribution exact_joint(const BinaryChain &chain,
                                                 const Rational &cos_ab);

[[nodiscard]] double exact_correlation(const BinaryChain &chain, double cos_ab);
[[nodiscard]] Rational exact_correlation(const BinaryChain &chain,
                                         const Rational &cos_ab);

/// -(1/3) s (s+1) cos_ab.
[[nodiscard]] double singlet_correlation(SpinValue spin, double cos_ab);

struct RecursionIdentityRow {
    int dimension{0};
    StepKind kind{StepKind::HalfInteger};
    Rational lhs;
    Rational rhs;
    [[nodiscard]] bool holds() const { return lhs == rhs; }
};

struct RecursionIdentityReport {
    std::vector<RecursionIdentityRow> rows;
    [[nodiscard]] bool all_hold() const;
};

/**
 * @brief Check the per-step correlation identities for d in
 * [d_min, d_max], with K(d) = (d^2 - 1) / 12 = s(s+1)/3:
 *
 *     even d:  (d/4)^2 + K(d/2) = K(d)
 *     odd d:   ((d-1)/d) ((d+1)/4)^2 + K((d-1)/2)) = K(d)
 */
[[nodiscard]] RecursionIdentityReport verify_recursion_identity(int d_min,
                                                                int d_max);

/// K(d) = (d^2 - 1) / 12.
[[nodiscard]] Rational correlation_scale(int dimension);

} // namespace singlet
