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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "singlet/statistics.hpp"

using namespace singlet;

TEST_CASE("chi-square survival function matches reference values", "[statistics]") {
    struct Row {
        double x;
        int dof;
        double expected;
    };
    const std::vector<Row> rows{
        {0.5, 1, 0.4795001222},  {5.0, 1, 0.02534731868},  {20.0, 1, 7.744216431e-06},
        {0.5, 4, 0.9735009788},  {5.0, 4, 0.2872974952},   {20.0, 4, 0.0004993992274},
        {0.5, 6, 0.9978385033},  {5.0, 6, 0.5438131159},   {20.0, 6, 0.002769395716},
    };
    for (const auto &row : rows) {
        INFO("x = " << row.x << " dof = " << row.dof);
        CHECK(std::abs(chi_square_sf(row.x, row.dof) - row.expected) <=
              1e-3 * row.expected);
    }
    CHECK(chi_square_sf(0.0, 3) == 1.0);
}

TEST_CASE("incomplete gamma complements", "[statistics]") {
    for (double a : {0.5, 1.0, 2.5, 10.0}) {
        for (double x : {0.1, 1.0, 3.0, 12.0, 40.0}) {
            CHECK(std::abs(gamma_p(a, x) + gamma_q(a, x) - 1.0) <= 1e-12);
        }
    }
    CHECK(std::abs(gamma_p(1.0, 2.0) - (1.0 - std::exp(-2.0))) <= 1e-14);
}

TEST_CASE("correlation estimate worked examples", "[statistics]") {
    const std::vector<std::pair<HalfInteger, HalfInteger>> same{
        {HalfInteger{1}, HalfInteger{1}}, {HalfInteger{-1}, HalfInteger{-1}}};
    const auto e = estimate_correlation(same);
    CHECK(e.mean == 0.25);
    CHECK(e.std_error == 0.0);
    CHECK(e.n_trials == 2);

    const std::vector<std::pair<HalfInteger, HalfInteger>> mixed{
        {HalfInteger{2}, HalfInteger{2}}, {HalfInteger{2}, HalfInteger{-2}},
        {HalfInteger{0}, HalfInteger{2}}, {HalfInteger{-2}, HalfInteger{-2}}};
    const auto m = estimate_correlation(mixed);
    // Products 1, -1, 0, 1: mean 1/4, sample variance 11/12.
    CHECK(m.mean == 0.25);
    CHECK(std::abs(m.std_error - std::sqrt(11.0 / 12.0 / 4.0)) <= 1e-15);

    const std::vector<std::pair<HalfInteger, HalfInteger>> one{{HalfInteger{1}, HalfInteger{1}}};
    CHECK_THROWS_AS(estimate_correlation(one), std::invalid_argument);
}

TEST_CASE("estimates ignore sample order", "[statistics][property]") {
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<int> pick(-5, 5);
    std::vector<std::pair<HalfInteger, HalfInteger>> samples;
    for (int i = 0; i < 1000; ++i) {
        samples.push_back({HalfInteger{pick(gen)}, HalfInteger{pick(gen)}});
    }
    const auto base = estimate_correlation(samples);
    for (int round = 0; round < 5; ++round) {
        std::shuffle(samples.begin(), samples.end(), gen);
        const auto e = estimate_correlation(samples);
        CHECK(e.mean == base.mean);
        CHECK(e.std_error == base.std_error);
    }
}

TEST_CASE("moment merges are order independent", "[statistics][property]") {
    std::mt19937_64 gen(9);
    std::uniform_int_distribution<int> pick(-9, 9);
    std::vector<ProductMoments> parts(6);
    ProductMoments whole;
    for (int i = 0; i < 600; ++i) {
        const HalfInteger a{pick(gen)};
        const HalfInteger b{pick(gen)};
        parts[static_cast<std::size_t>(i % 6)].add(a, b);
        whole.add(a, b);
    }
    ProductMoments forward;
    for (const auto &p : parts) {
        forward.merge(p);
    }
    ProductMoments backward;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        backward.merge(*it);
    }
    CHECK(forward.estimate().mean == whole.estimate().mean);
    CHECK(backward.estimate().mean == whole.estimate().mean);
    CHECK(backward.estimate().std_error == whole.estimate().std_error);
}

TEST_CASE("chi-square uniformity", "[statistics]") {
    const std::vector<std::int64_t> lopsided{100, 0};
    const auto r = chi_square_uniform(lopsided);
    CHECK(r.chi_square == 100.0);
    CHECK(r.degrees_of_freedom == 1);
    CHECK(r.p_value < 1e-20);

    const std::vector<std::int64_t> flat{25, 25, 25, 25};
    const auto f = chi_square_uniform(flat);
    CHECK(f.chi_square == 0.0);
    CHECK(f.p_value == 1.0);

    const std::vector<std::int64_t> single{10};
    CHECK_THROWS_AS(chi_square_uniform(single), std::invalid_argument);
    const std::vector<std::int64_t> empty{0, 0};
    CHECK_THROWS_AS(chi_square_uniform(empty), std::invalid_argument);
}

TEST_CASE("z_test", "[statistics]") {
    CHECK(z_test({0.5, 0.1, 100}, 0.3) == Catch::Approx(2.0));
    CHECK(z_test({0.25, 0.0, 2}, 0.25) == 0.0);
    CHECK(z_test({0.25, 0.0, 2}, 0.3) == std::numeric_limits<double>::infinity());
    CHECK(proportion_std_error(0.5, 100) == 0.05);
}
