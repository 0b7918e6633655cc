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
 * @file random.hpp
 * Splittable random streams, uniform sampling on S^2 and the Sgn primitive.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "geometry.hpp"

namespace singlet {

/// Published default seed, "S1NGLE7" in hex-speak.
inline constexpr std::uint64_t kDefaultSeed = 0x51461E7ULL;

/// SplitMix64 finalizer; a bijection on 64-bit words.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31U);
}

/**
 * @brief Deterministic random stream keyed by (seed, stream_index).
 *
 * A SplitMix64 sequence whose starting state is derived from both key parts.
 * Satisfies UniformRandomBitGenerator so it plugs into <random>
 * distributions. split() derives child streams from the parent key, so a
 * Monte Carlo trial keyed by its index draws the same numbers no matter
 * which worker runs it.
 */
class RandomStream {
  public:
    using result_type = std::uint64_t;

    explicit constexpr RandomStream(std::uint64_t seed = kDefaultSeed,
                                    std::uint64_t stream_index = 0)
        : seed_{seed}, stream_index_{stream_index},
          state_{mix64(seed ^ mix64(stream_index + 0x632BE59BD9B4E019ULL))} {}

    [[nodiscard]] constexpr std::uint64_t seed() const { return seed_; }
    [[nodiscard]] constexpr std::uint64_t stream_index() const {
        return stream_index_;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    constexpr result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>((*this)() >> 11U) * 0x1.0p-53;
    }

    [[nodiscard]] constexpr RandomStream split(std::uint64_t index) const {
        return RandomStream{
            seed_, mix64(stream_index_ * 0xD1B54A32D192ED03ULL + index + 1)};
    }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_index_;
    std::uint64_t state_;
};

[[nodiscard]] constexpr RandomStream split_stream(const RandomStream &stream,
                                                  std::uint64_t index) {
    return stream.split(index);
}

/// +1 for x >= 0 (including -0.0), -1 for x < 0.
[[nodiscard]] inline int sgn(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("sgn: non-finite argument");
    }
    return x >= 0.0 ? 1 : -1;
}

/// Sgn without the finiteness check, for inner loops over unit vectors.
[[nodiscard]] constexpr int sgn_unchecked(double x) { return x >= 0.0 ? 1 : -1; }

/**
 * @brief Area-uniform point on S^2: z uniform on [-1, 1], azimuth uniform on
 * [0, 2 pi).
 */
[[nodiscard]] inline Direction sample_direction(RandomStream &stream) {
    constexpr double two_pi = 6.283185307179586476925;
    const double z = 2.0 * stream.uniform() - 1.0;
    const double phi = two_pi * stream.uniform();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return Direction::from_unit({r * std::cos(phi), r * std::sin(phi), z});
}

} // namespace singlet
