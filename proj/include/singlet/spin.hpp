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
 * @file spin.hpp
 * Exact spin values, half-integer outcomes and the binary chain of the
 * local dimension d = 2s + 1 that drives the simulation recursion.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rational.hpp"

namespace singlet {

/// A spin s held as the integer 2s.
class SpinValue {
  public:
    constexpr SpinValue() = default;

    [[nodiscard]] constexpr int twice_s() const { return twice_s_; }
    [[nodiscard]] constexpr int dimension() const { return twice_s_ + 1; }
    [[nodiscard]] constexpr bool is_integer_spin() const {
        return twice_s_ % 2 == 0;
    }
    [[nodiscard]] double value() const { return 0.5 * twice_s_; }
    /// s(s+1), the Casimir eigenvalue.
    [[nodiscard]] Rational casimir() const {
        return Rational(static_cast<std::int64_t>(twice_s_) * (twice_s_ + 2),
                        4);
    }
    /// "3/2", "1", "0".
    [[nodiscard]] std::string str() const;

    friend constexpr bool operator==(SpinValue, SpinValue) = default;
    friend constexpr auto operator<=>(SpinValue, SpinValue) = default;

  private:
    friend SpinValue make_spin(int twice_s);
    explicit constexpr SpinValue(int twice_s) : twice_s_{twice_s} {}
    int twice_s_{0};
};

/// Throws std::invalid_argument for negative input.
[[nodiscard]] SpinValue make_spin(int twice_s);

/**
 * @brief Parse "3", "3/2" or "1.5".
 *
 * Fractions must have denominator 1 or 2 and decimals must end in .0 or .5.
 * Anything else throws std::invalid_argument.
 */
[[nodiscard]] SpinValue parse_spin(std::string_view text);

/// A multiple of 1/2, stored as twice its value.
struct HalfInteger {
    int twice{0};

    [[nodiscard]] double to_double() const { return 0.5 * twice; }
    [[nodiscard]] Rational to_rational() const { return {twice, 2}; }
    /// Integer values print as integers, others as "p/2".
    [[nodiscard]] std::string str() const;

    friend constexpr bool operator==(HalfInteger, HalfInteger) = default;
    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;
    friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) {
        return {a.twice + b.twice};
    }
    friend constexpr HalfInteger operator-(HalfInteger a) { return {-a.twice}; }
};

enum class StepKind { HalfInteger, Integer };

/**
 * @brief One appended bit of the binary expansion of d.
 *
 * An even prefix (appended 0) is a half-integer step with coefficient
 * prefix/4. An odd prefix (appended 1) is an integer step with coefficient
 * (prefix+1)/4, gated by a shared f-bit of bias (prefix-2)/prefix.
 */
struct ChainStep {
    int prefix_dim{2};
    StepKind kind{StepKind::HalfInteger};
    HalfInteger coefficient{1};
    std::optional<Rational> f_bias;
    /// Position of this step's nu vector among the integer steps, or -1.
    int nu_slot{-1};

    [[nodiscard]] bool is_integer_step() const {
        return kind == StepKind::Integer;
    }
};

class BinaryChain {
  public:
    [[nodiscard]] SpinValue spin() const { return spin_; }
    /// a_0 a_1 ... a_n, most significant first.
    [[nodiscard]] const std::vector<int> &bits() const { return bits_; }
    [[nodiscard]] const std::vector<ChainStep> &steps() const { return steps_; }
    [[nodiscard]] std::size_t length() const { return steps_.size(); }
    [[nodiscard]] int integer_step_count() const { return integer_steps_; }
    /// True for chains built by perturb_chain; such chains skip validation.
    [[nodiscard]] bool is_perturbed() const { return perturbed_; }

    /**
     * @brief Check every structural invariant of an unperturbed chain.
     * @return Empty string when valid, otherwise a description of the first
     * violated invariant.
     */
    [[nodiscard]] std::string check_invariants() const;

  private:
    friend BinaryChain build_chain(SpinValue spin);
    friend BinaryChain perturb_chain(const BinaryChain &chain,
                                     std::optional<std::size_t> step,
                                     const Rational &bias_delta,
                                     int coefficient_delta_twice);
    SpinValue spin_;
    std::vector<int> bits_;
    std::vector<ChainStep> steps_;
    int integer_steps_{0};
    bool perturbed_{false};
};

/// Spin 0 yields an empty chain.
[[nodiscard]] BinaryChain build_chain(SpinValue spin);

/**
 * @brief Copy of @p chain with f-biases shifted by @p bias_delta and
 * coefficients shifted by @p coefficient_delta_twice halves.
 *
 * Applies to @p step only when given, otherwise to every step. Used to check
 * that the verification suite notices protocol defects.
 */
[[nodiscard]] BinaryChain perturb_chain(const BinaryChain &chain,
                                        std::optional<std::size_t> step,
                                        const Rational &bias_delta,
                                        int coefficient_delta_twice);

/// Number of cbits per run, ceil(log2(s + 1)).
[[nodiscard]] int comm_cost(SpinValue spin);

struct RandomnessBudget {
    int n_lambda{0};
    int n_mu{0};
    int n_nu{0};
    friend constexpr bool operator==(const RandomnessBudget &,
                                     const RandomnessBudget &) = default;
};

[[nodiscard]] RandomnessBudget randomness_budget(SpinValue spin);

/// s, s-1, ..., -s.
[[nodiscard]] std::vector<HalfInteger> outcome_support(SpinValue spin);

/// Index of @p value in outcome_support, or -1 when outside it.
[[nodiscard]] inline int support_index(SpinValue spin, HalfInteger value) {
    const int offset = spin.twice_s() - value.twice;
    if (offset < 0 || offset > 2 * spin.twice_s() || offset % 2 != 0) {
        return -1;
    }
    return offset / 2;
}

/// Binary digits of @p value, most significant first.
[[nodiscard]] std::string binary_string(int value);

} // namespace singlet
