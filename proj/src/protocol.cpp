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
#include "singlet/protocol.hpp"

#include <stdexcept>
#include <string>

namespace singlet {

namespace {

/// The accumulator recursion shared by both parties. @p sign_at(k) yields the
/// +-1 measurement sign of step k; @p f_at(slot) the f-bit of an integer step.
template <typename SignFn, typename FFn>
int accumulate_twice(const BinaryChain &chain, SignFn &&sign_at, FFn &&f_at) {
    int acc = 0;
    const auto &steps = chain.steps();
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const auto &step = steps[k];
        const int term = step.coefficient.twice * sign_at(k);
        if (step.is_integer_step()) {
            acc = f_at(step.nu_slot) > 0 ? term + acc : 0;
        } else {
            acc = term + acc;
        }
    }
    return acc;
}

int bob_sign(const Direction &b, const Direction &lambda, const Direction &mu,
             int cbit) {
    return sgn_unchecked(b.dot(lambda.vec() + static_cast<double>(cbit) * mu.vec()));
}

} // namespace

void draw_shared_randomness(const BinaryChain &chain, RandomStream &stream,
                            SharedRandomness &out) {
    out.lambdas.clear();
    out.mus.clear();
    out.nus.clear();
    for (const auto &step : chain.steps()) {
        out.lambdas.push_back(sample_direction(stream));
        out.mus.push_back(sample_direction(stream));
        if (step.is_integer_step()) {
            out.nus.push_back(sample_direction(stream));
        }
    }
}

SharedRandomness draw_shared_randomness(const BinaryChain &chain,
                                        RandomStream &stream) {
    SharedRandomness out;
    draw_shared_randomness(chain, stream, out);
    return out;
}

int f_bit(const Direction &nu, const Rational &bias) {
    if (bias <= Rational(0) || bias >= Rational(1)) {
        throw std::invalid_argument("f-bit bias must lie in (0, 1), got " +
                                    bias.str());
    }
    return f_bit(nu, bias.to_double());
}

AliceResult alice_output(const Direction &a, const BinaryChain &chain,
                         const SharedRandomness &rnd) {
    AliceResult out;
    const auto &steps = chain.steps();
    out.cbits.reserve(steps.size());
    for (std::size_t k = 0; k < steps.size(); ++k) {
        out.cbits.push_back(c_bit(a, rnd.lambdas[k], rnd.mus[k]));
        if (steps[k].is_integer_step()) {
            out.f_bits.push_back(f_bit(
                rnd.nus[static_cast<std::size_t>(steps[k].nu_slot)],
                steps[k].f_bias->to_double()));
        }
    }
    const int acc = accumulate_twice(
        chain, [&](std::size_t k) { return sgn_unchecked(a.dot(rnd.lambdas[k])); },
        [&](int slot) { return out.f_bits[static_cast<std::size_t>(slot)]; });
    out.alpha = HalfInteger{-acc};
    return out;
}

HalfInteger bob_output(const Direction &b, const BinaryChain &chain,
                       const SharedRandomness &rnd, std::span<const int> cbits) {
    if (cbits.size() != chain.length()) {
        throw std::invalid_argument("transcript has " +
                                    std::to_string(cbits.size()) +
                                    " cbits, chain needs " +
                                    std::to_string(chain.length()));
    }
    const auto &steps = chain.steps();
    const int acc = accumulate_twice(
        chain,
        [&](std::size_t k) {
            return bob_sign(b, rnd.lambdas[k], rnd.mus[k], cbits[k]);
        },
        [&](int slot) {
            // Bob evaluates the shared f-bit himself.
            for (const auto &step : steps) {
                if (step.nu_slot == slot) {
                    return f_bit(rnd.nus[static_cast<std::size_t>(slot)],
                                 step.f_bias->to_double());
                }
            }
            return 1;
        });
    return HalfInteger{acc};
}

TrialOutcome run_trial(const Direction &a, const Direction &b,
                       const BinaryChain &chain, RandomStream &stream) {
    const auto rnd = draw_shared_randomness(chain, stream);
    auto alice = alice_output(a, chain, rnd);
    TrialOutcome out;
    out.alpha = alice.alpha;
    out.beta = bob_output(b, chain, rnd, alice.cbits);
    out.cbits = std::move(alice.cbits);
    out.f_bits = std::move(alice.f_bits);
    return out;
}

TrialOutcome run_trial_rotated(const Direction &a, const Direction &b,
                               const Mat3 &rotation, const BinaryChain &chain,
                               RandomStream &stream) {
    if (!rotation.is_rotation()) {
        throw std::invalid_argument(
            "rotation must be orthogonal with determinant +1");
    }
    // A proper rotation preserves unit length to the checked tolerance.
    return run_trial(Direction::from_unit(rotation.apply(a.vec())), b, chain,
                     stream);
}

TrialEvaluator::TrialEvaluator(const BinaryChain &chain) : chain_{&chain} {
    for (const auto &step : chain.steps()) {
        steps_.push_back({step.coefficient.twice, step.is_integer_step(),
                          step.f_bias ? step.f_bias->to_double() : 0.0});
    }
}

void TrialEvaluator::run(const Direction &a, const Direction &b,
                         RandomStream &stream, TrialOutcome &out) {
    draw_shared_randomness(*chain_, stream, rnd_);
    out.cbits.clear();
    out.f_bits.clear();
    int acc_a = 0;
    int acc_b = 0;
    std::size_t slot = 0;
    for (std::size_t k = 0; k < steps_.size(); ++k) {
        const auto &lambda = rnd_.lambdas[k];
        const auto &mu = rnd_.mus[k];
        const int x = sgn_unchecked(a.dot(lambda));
        const int c = x * sgn_unchecked(a.dot(mu));
        const int y = bob_sign(b, lambda, mu, c);
        out.cbits.push_back(c);
        const int twice_coeff = steps_[k].twice_coefficient;
        acc_a = twice_coeff * x + acc_a;
        acc_b = twice_coeff * y + acc_b;
        if (steps_[k].integer) {
            const int f = f_bit(rnd_.nus[slot++], steps_[k].bias);
            out.f_bits.push_back(f);
            if (f < 0) {
                acc_a = 0;
                acc_b = 0;
            }
        }
    }
    out.alpha = HalfInteger{-acc_a};
    out.beta = HalfInteger{acc_b};
}

} // namespace singlet
