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
 * @file rational.hpp
 * Exact rational numbers over 64-bit integers with overflow detection.
 */
#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace singlet {

/**
 * @brief Normalized fraction num/den with den > 0 and gcd(num, den) = 1.
 *
 * Intermediate products are formed in 128 bits; a result that does not fit
 * back into 64 bits throws std::overflow_error rather than wrapping.
 */
class Rational {
  public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_{value} {} // NOLINT
    Rational(std::int64_t num, std::int64_t den) {
        if (den == 0) {
            throw std::domain_error("Rational: zero denominator");
        }
        assign(num, den);
    }

    [[nodiscard]] constexpr std::int64_t num() const { return num_; }
    [[nodiscard]] constexpr std::int64_t den() const { return den_; }

    [[nodiscard]] double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    [[nodiscard]] std::string str() const {
        if (den_ == 1) {
            return std::to_string(num_);
        }
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    Rational operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

    friend Rational operator+(const Rational &a, const Rational &b) {
        const auto n = static_cast<__int128>(a.num_) * b.den_ +
                       static_cast<__int128>(b.num_) * a.den_;
        const auto d = static_cast<__int128>(a.den_) * b.den_;
        return from_wide(n, d);
    }
    friend Rational operator-(const Rational &a, const Rational &b) {
        return a + (-b);
    }
    friend Rational operator*(const Rational &a, const Rational &b) {
        return from_wide(static_cast<__int128>(a.num_) * b.num_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational &a, const Rational &b) {
        if (b.num_ == 0) {
            throw std::domain_error("Rational: division by zero");
        }
        return from_wide(static_cast<__int128>(a.num_) * b.den_,
                         static_cast<__int128>(a.den_) * b.num_);
    }
    Rational &operator+=(const Rational &o) { return *this = *this + o; }
    Rational &operator-=(const Rational &o) { return *this = *this - o; }
    Rational &operator*=(const Rational &o) { return *this = *this * o; }

    friend bool operator==(const Rational &, const Rational &) = default;
    friend std::strong_ordering operator<=>(const Rational &a,
                                            const Rational &b) {
        const auto lhs = static_cast<__int128>(a.num_) * b.den_;
        const auto rhs = static_cast<__int128>(b.num_) * a.den_;
        return lhs <=> rhs;
    }

  private:
    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) {
            a = -a;
        }
        if (b < 0) {
            b = -b;
        }
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational from_wide(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const __int128 g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr auto lo = static_cast<__int128>(INT64_MIN) + 1;
        constexpr auto hi = static_cast<__int128>(INT64_MAX);
        if (n < lo || n > hi || d > hi) {
            throw std::overflow_error("Rational: 64-bit overflow");
        }
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    void assign(std::int64_t n, std::int64_t d) {
        *this = from_wide(n, d);
    }

    std::int64_t num_{0};
    std::int64_t den_{1};
};

} // namespace singlet
