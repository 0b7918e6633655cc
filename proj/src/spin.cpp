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
#include "singlet/spin.hpp"

#include <bit>
#include <charconv>
#include <stdexcept>

namespace singlet {

std::string SpinValue::str() const { return HalfInteger{twice_s_}.str(); }

std::string HalfInteger::str() const {
    if (twice % 2 == 0) {
        return std::to_string(twice / 2);
    }
    return std::to_string(twice) + "/2";
}

SpinValue make_spin(int twice_s) {
    if (twice_s < 0) {
        throw std::invalid_argument("spin must be non-negative, got 2s = " +
                                    std::to_string(twice_s));
    }
    return SpinValue{twice_s};
}

namespace {

bool parse_uint(std::string_view text, int &out) {
    if (text.empty()) {
        return false;
    }
    const auto *first = text.data();
    const auto *last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && out >= 0;
}

[[noreturn]] void bad_spin(std::string_view text) {
    throw std::invalid_argument("invalid spin '" + std::string(text) +
                                "': expected forms like 3, 3/2 or 1.5");
}

} // namespace

SpinValue parse_spin(std::string_view text) {
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    int whole = 0;
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        int den = 0;
        if (!parse_uint(text.substr(0, slash), whole) ||
            !parse_uint(text.substr(slash + 1), den) || (den != 1 && den != 2)) {
            bad_spin(text);
        }
        return make_spin(den == 1 ? 2 * whole : whole);
    }
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto frac = text.substr(dot + 1);
        if (!parse_uint(text.substr(0, dot), whole) || frac.empty()) {
            bad_spin(text);
        }
        const auto nonzero = frac.find_first_not_of('0', 1);
        if (nonzero != std::string_view::npos ||
            (frac.front() != '0' && frac.front() != '5')) {
            bad_spin(text);
        }
        return make_spin(2 * whole + (frac.front() == '5' ? 1 : 0));
    }
    if (!parse_uint(text, whole)) {
        bad_spin(text);
    }
    return make_spin(2 * whole);
}

BinaryChain build_chain(SpinValue spin) {
    BinaryChain chain;
    chain.spin_ = spin;
    const auto d = static_cast<unsigned>(spin.dimension());
    const int width = std::bit_width(d);
    for (int shift = width - 1; shift >= 0; --shift) {
        chain.bits_.push_back(static_cast<int>((d >> shift) & 1U));
    }
    int prefix = 1;
    for (std::size_t k = 1; k < chain.bits_.size(); ++k) {
        prefix = 2 * prefix + chain.bits_[k];
        ChainStep step;
        step.prefix_dim = prefix;
        if (prefix % 2 == 0) {
            step.kind = StepKind::HalfInteger;
            step.coefficient = HalfInteger{prefix / 2};
        } else {
            step.kind = StepKind::Integer;
            step.coefficient = HalfInteger{(prefix + 1) / 2};
            step.f_bias = Rational(prefix - 2, prefix);
            step.nu_slot = chain.integer_steps_++;
        }
        chain.steps_.push_back(step);
    }
    return chain;
}

BinaryChain perturb_chain(const BinaryChain &chain,
                          std::optional<std::size_t> step,
                          const Rational &bias_delta,
                          int coefficient_delta_twice) {
    BinaryChain out = chain;
    out.perturbed_ = true;
    for (std::size_t k = 0; k < out.steps_.size(); ++k) {
        if (step && *step != k) {
            continue;
        }
        auto &s = out.steps_[k];
        s.coefficient.twice += coefficient_delta_twice;
        if (s.f_bias) {
            *s.f_bias += bias_delta;
        }
    }
    return out;
}

std::string BinaryChain::check_invariants() const {
    const int d = spin_.dimension();
    if (bits_.empty() || bits_.front() != 1) {
        return "leading bit must be 1";
    }
    const auto n = static_cast<long>(steps_.size());
    if (n + 1 != static_cast<long>(bits_.size())) {
        return "one step per appended bit";
    }
    // 2^n - 1 < d <= 2^(n+1) - 1
    if (!((1L << n) - 1 < d && d <= (1L << (n + 1)) - 1)) {
        return "chain length does not bracket d";
    }
    int prefix = 1;
    int integer_count = 0;
    int bit_sum = 0;
    for (std::size_t k = 0; k < steps_.size(); ++k) {
        const auto &s = steps_[k];
        prefix = 2 * prefix + bits_[k + 1];
        bit_sum += bits_[k + 1];
        if (s.prefix_dim != prefix) {
            return "prefix mismatch at step " + std::to_string(k);
        }
        if (prefix % 2 == 0) {
            if (s.kind != StepKind::HalfInteger || s.coefficient.twice * 2 != prefix ||
                s.f_bias || s.nu_slot != -1) {
                return "bad half-integer step " + std::to_string(k);
            }
        } else {
            if (s.kind != StepKind::Integer ||
                s.coefficient.twice * 2 != prefix + 1 || !s.f_bias ||
                *s.f_bias != Rational(prefix - 2, prefix) ||
                s.nu_slot != integer_count) {
                return "bad integer step " + std::to_string(k);
            }
            ++integer_count;
        }
    }
    if (prefix != d) {
        return "final prefix differs from d";
    }
    if (integer_count != integer_steps_ || integer_count != bit_sum) {
        return "integer step count differs from a_1 + ... + a_n";
    }
    return {};
}

int comm_cost(SpinValue spin) {
    return static_cast<int>(
               std::bit_width(static_cast<unsigned>(spin.dimension()))) -
           1;
}

RandomnessBudget randomness_budget(SpinValue spin) {
    const auto chain = build_chain(spin);
    const auto n = static_cast<int>(chain.length());
    return {n, n, chain.integer_step_count()};
}

std::vector<HalfInteger> outcome_support(SpinValue spin) {
    std::vector<HalfInteger> out;
    out.reserve(static_cast<std::size_t>(spin.dimension()));
    for (int t = spin.twice_s(); t >= -spin.twice_s(); t -= 2) {
        out.push_back(HalfInteger{t});
    }
    return out;
}

std::string binary_string(int value) {
    if (value <= 0) {
        return "0";
    }
    std::string out;
    for (int shift = std::bit_width(static_cast<unsigned>(value)) - 1;
         shift >= 0; --shift) {
        out.push_back(((value >> shift) & 1) != 0 ? '1' : '0');
    }
    return out;
}

} // namespace singlet
