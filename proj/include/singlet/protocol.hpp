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
 * @file protocol.hpp
 * One run of the one-way classical protocol that reproduces spin-s singlet
 * correlations.
 *
 * Alice and Bob share, per chain step k, two uniform unit vectors lambda_k
 * and mu_k, and per integer step a third vector nu_k. Walking the chain from
 * the most significant prefix, each side keeps an exact half-integer
 * accumulator:
 *
 *     half-integer step:  acc <- coeff_k * x_k + acc
 *     integer step:       acc <- ((1 + f_k) / 2) * (coeff_k * x_k + acc)
 *
 * with x_k = Sgn(a.lambda_k) for Alice and x_k = Sgn(b.(lambda_k + c_k mu_k))
 * for Bob. Alice outputs -acc, Bob outputs +acc. Alice sends the n cbits
 * c_k = Sgn(a.lambda_k) Sgn(a.mu_k); the f-bits f_k = Sgn(z.nu_k + p_k) are
 * computed locally by both parties from shared randomness.
 */
#pragma once

#include <span>
#include <vector>

#include "geometry.hpp"
#include "random.hpp"
#include "spin.hpp"

namespace singlet {

struct SharedRandomness {
    std::vector<Direction> lambdas;
    std::vector<Direction> mus;
    /// One per integer step, indexed by ChainStep::nu_slot.
    std::vector<Direction> nus;
};

struct TrialOutcome {
    HalfInteger alpha;
    HalfInteger beta;
    /// One per chain step, always all n of them.
    std::vector<int> cbits;
    /// One per integer step; shared, not communicated.
    std::vector<int> f_bits;

    friend bool operator==(const TrialOutcome &, const TrialOutcome &) = default;
};

/// Draws lambda_k, mu_k (and nu_k on integer steps) step by step.
[[nodiscard]] SharedRandomness draw_shared_randomness(const BinaryChain &chain,
                                                      RandomStream &stream);
/// Reuses the storage of @p out.
void draw_shared_randomness(const BinaryChain &chain, RandomStream &stream,
                            SharedRandomness &out);

/// Sgn(a.lambda) Sgn(a.mu).
[[nodiscard]] inline int c_bit(const Direction &a, const Direction &lambda,
                               const Direction &mu) {
    return sgn_unchecked(a.dot(lambda)) * sgn_unchecked(a.dot(mu));
}

/// Sgn(z.nu + bias) in the fixed frame; requires 0 < bias < 1.
[[nodiscard]] int f_bit(const Direction &nu, const Rational &bias);
/// Unchecked variant; @p bias may lie outside (0, 1) for perturbed chains.
[[nodiscard]] inline int f_bit(const Direction &nu, double bias) {
    return sgn_unchecked(nu.z() + bias);
}

struct AliceResult {
    HalfInteger alpha;
    std::vector<int> cbits;
    std::vector<int> f_bits;
};

[[nodiscard]] AliceResult alice_output(const Direction &a,
                                       const BinaryChain &chain,
                                       const SharedRandomness &rnd);

/**
 * @brief Bob's output from his direction, the shared randomness and the
 * transcript alone.
 * @throws std::invalid_argument if cbits.size() != chain.length().
 */
[[nodiscard]] HalfInteger bob_output(const Direction &b,
                                     const BinaryChain &chain,
                                     const SharedRandomness &rnd,
                                     std::span<const int> cbits);

[[nodiscard]] TrialOutcome run_trial(const Direction &a, const Direction &b,
                                     const BinaryChain &chain,
                                     RandomStream &stream);

/// run_trial with Alice's input replaced by rotation * a.
/// @throws std::invalid_argument unless @p rotation is proper orthogonal.
[[nodiscard]] TrialOutcome run_trial_rotated(const Direction &a,
                                             const Direction &b,
                                             const Mat3 &rotation,
                                             const BinaryChain &chain,
                                             RandomStream &stream);

/**
 * @brief Allocation-free trial evaluation for the Monte Carlo kernels.
 *
 * Holds per-chain constants (coefficients, biases as doubles) and scratch
 * buffers. One instance per worker.
 */
class TrialEvaluator {
  public:
    explicit TrialEvaluator(const BinaryChain &chain);

    /// Same result as run_trial on the same stream state.
    void run(const Direction &a, const Direction &b, RandomStream &stream,
             TrialOutcome &out);

  private:
    struct StepConst {
        int twice_coefficient;
        bool integer;
        double bias;
    };
    std::vector<StepConst> steps_;
    SharedRandomness rnd_;
    const BinaryChain *chain_;
};

} // namespace singlet
