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
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "singlet/random.hpp"
#include "singlet/statistics.hpp"

using namespace singlet;

TEST_CASE("sgn follows the x >= 0 convention", "[random]") {
    CHECK(sgn(0.0) == 1);
    CHECK(sgn(-0.0) == 1);
    CHECK(sgn(-0.3) == -1);
    CHECK(sgn(2.5) == 1);
    CHECK(sgn(-1e-300) == -1);
    CHECK(sgn(sgn(0.7)) == 1);
    CHECK_THROWS_AS(sgn(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(sgn(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("streams are deterministic and split into distinct children", "[random]") {
    const RandomStream root(42);
    auto a = root.split(0);
    auto b = root.split(0);
    auto c = root.split(1);
    std::vector<std::uint64_t> va, vb, vc;
    for (int i = 0; i < 16; ++i) {
        va.push_back(a());
        vb.push_back(b());
        vc.push_back(c());
    }
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(split_stream(root, 7).stream_index() == root.split(7).stream_index());
    CHECK(RandomStream(1).split(3).stream_index() == RandomStream(2).split(3).stream_index());
    auto d1 = RandomStream(1).split(3);
    auto d2 = RandomStream(2).split(3);
    CHECK(d1() != d2());
}

TEST_CASE("sampled directions are unit vectors", "[random]") {
    RandomStream stream(7);
    for (int i = 0; i < 10000; ++i) {
        const auto d = sample_direction(stream);
        CHECK(std::abs(d.vec().dot(d.vec()) - 1.0) <= 1e-9);
    }
}

TEST_CASE("sphere sampling is uniform", "[random][statistical]") {
    constexpr std::int64_t n = 1'000'000;
    RandomStream stream(2024);
    double sx = 0.0, sy = 0.0, sz = 0.0;
    const double biases[3] = {1.0 / 3.0, 3.0 / 5.0, 5.0 / 7.0};
    std::int64_t above[3] = {0, 0, 0};
    std::vector<std::int64_t> bins(20);
    std::int64_t a_plus = 0;
    const auto a = Direction::normalized({0.3, -0.5, 0.812404}, 1e-3);
    for (std::int64_t i = 0; i < n; ++i) {
        const auto d = sample_direction(stream);
        sx += d.x();
        sy += d.y();
        sz += d.z();
        for (int k = 0; k < 3; ++k) {
            above[k] += d.z() >= biases[k] ? 1 : 0;
        }
        const auto bin = std::min<std::size_t>(19, static_cast<std::size_t>((d.z() + 1.0) * 10.0));
        ++bins[bin];
        a_plus += sgn(a.dot(d)) > 0 ? 1 : 0;
    }
    // Each component has variance 1/3, so the mean has standard error
    // 1/sqrt(3N) ~ 5.8e-4; 0.005 is far outside that.
    CHECK(std::abs(sx / n) < 0.005);
    CHECK(std::abs(sy / n) < 0.005);
    CHECK(std::abs(sz / n) < 0.005);
    for (int k = 0; k < 3; ++k) {
        const double frac = static_cast<double>(above[k]) / n;
        const double expected = (1.0 - biases[k]) / 2.0;
        CHECK(std::abs(frac - expected) <= 5.0 * proportion_std_error(frac, n));
    }
    CHECK(chi_square_uniform(bins).p_value > 1e-3);
    const double frac = static_cast<double>(a_plus) / n;
    CHECK(std::abs(frac - 0.5) <= 5.0 * proportion_std_error(0.5, n));
}
