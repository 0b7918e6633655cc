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
#include <functional>
#include <map>

#include "singlet/enumeration.hpp"
#include "singlet/montecarlo.hpp"
#include "singlet/protocol.hpp"
#include "singlet/statistics.hpp"

using namespace singlet;

namespace {

const Direction kZ = Direction::z_axis();
const Direction kX = Direction::x_axis();

/// Hand-built randomness: every lambda/mu/nu set to the given vectors.
SharedRandomness fixed_randomness(const BinaryChain &chain, const Direction &lambda,
                                  const Direction &mu, const Direction &nu) {
    SharedRandomness r;
    for (const auto &step : chain.steps()) {
        r.lambdas.push_back(lambda);
        r.mus.push_back(mu);
        if (step.is_integer_step()) {
            r.nus.push_back(nu);
        }
    }
    return r;
}

/**
 * Nested form of the accumulator, written on the dimension d. The prefix of d
 * is floor(d/2). Even d adds (d/4) Sgn; odd d gates ((d+1)/4) Sgn + inner
 * with the f-bit of bias (d-2)/d.
 */
double nested_accumulator(int d, const std::function<int(int)> &sign_at,
                          const std::function<int(int)> &f_at) {
    if (d == 1) {
        return 0.0;
    }
    const double inner = nested_accumulator(d / 2, sign_at, f_at);
    if (d % 2 == 0) {
        return (d / 4.0) * sign_at(d) + inner;
    }
    return ((1 + f_at(d)) / 2.0) * (((d + 1) / 4.0) * sign_at(d) + inner);
}

} // namespace

TEST_CASE("shared randomness sizes follow the budget", "[protocol]") {
    RandomStream stream(1);
    const auto r_half = draw_shared_randomness(build_chain(make_spin(1)), stream);
    CHECK(r_half.lambdas.size() == 1);
    CHECK(r_half.mus.size() == 1);
    CHECK(r_half.nus.empty());
    const auto r_one = draw_shared_randomness(build_chain(make_spin(2)), stream);
    CHECK(r_one.lambdas.size() == 1);
    CHECK(r_one.nus.size() == 1);
    const auto r_three = draw_shared_randomness(build_chain(make_spin(6)), stream);
    CHECK(r_three.lambdas.size() == 2);
    CHECK(r_three.mus.size() == 2);
    CHECK(r_three.nus.size() == 2);
}

TEST_CASE("c_bit examples", "[protocol]") {
    RandomStream stream(3);
    for (int i = 0; i < 100; ++i) {
        const auto a = sample_direction(stream);
        const auto l = sample_direction(stream);
        CHECK(c_bit(a, l, l) == 1);
        CHECK(c_bit(a, l, -l) == -1);
    }
    CHECK(c_bit(kZ, kZ, kX) == 1);
}

TEST_CASE("f_bit examples", "[protocol]") {
    CHECK(f_bit(kZ, Rational(1, 3)) == 1);
    CHECK(f_bit(-kZ, Rational(1, 3)) == -1);
    CHECK(f_bit(kX, Rational(1, 3)) == 1);
    CHECK_THROWS_AS(f_bit(kZ, Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(f_bit(kZ, Rational(1)), std::invalid_argument);
}

TEST_CASE("alice_output worked examples", "[protocol]") {
    SECTION("s = 1/2 with a.lambda > 0") {
        const auto chain = build_chain(make_spin(1));
        const auto r = fixed_randomness(chain, kZ, kX, kZ);
        const auto out = alice_output(kZ, chain, r);
        CHECK(out.alpha == HalfInteger{-1});
        CHECK(out.cbits.size() == 1);
    }
    SECTION("s = 1 with f = -1 gives 0 whatever lambda is") {
        const auto chain = build_chain(make_spin(2));
        for (const auto &lambda : {kZ, -kZ, kX}) {
            const auto r = fixed_randomness(chain, lambda, kX, -kZ);
            const auto out = alice_output(kZ, chain, r);
            CHECK(out.alpha == HalfInteger{0});
            CHECK(out.f_bits == std::vector<int>{-1});
            CHECK(out.cbits.size() == 1);
        }
    }
    SECTION("s = 3/2 with both signs +1") {
        const auto chain = build_chain(make_spin(3));
        const auto r = fixed_randomness(chain, kZ, kZ, kZ);
        CHECK(alice_output(kZ, chain, r).alpha == HalfInteger{-3});
    }
}

TEST_CASE("bob_output worked examples", "[protocol]") {
    SECTION("s = 1/2 with b.(lambda + c mu) > 0") {
        const auto chain = build_chain(make_spin(1));
        const auto r = fixed_randomness(chain, kZ, kX, kZ);
        const std::vector<int> cbits{1};
        CHECK(bob_output(kZ, chain, r, cbits) == HalfInteger{1});
    }
    SECTION("s = 1 with f = -1") {
        const auto chain = build_chain(make_spin(2));
        const auto r = fixed_randomness(chain, kZ, kX, -kZ);
        const std::vector<int> cbits{-1};
        CHECK(bob_output(kZ, chain, r, cbits) == HalfInteger{0});
    }
    SECTION("transcript length is checked") {
        const auto chain = build_chain(make_spin(6));
        const auto r = fixed_randomness(chain, kZ, kX, kZ);
        const std::vector<int> short_cbits{1};
        CHECK_THROWS_AS(bob_output(kZ, chain, r, short_cbits), std::invalid_argument);
    }
}

TEST_CASE("extremal outputs reach +-s exactly", "[protocol][property]") {
    for (int twice_s = 1; twice_s <= 15; ++twice_s) {
        const auto chain = build_chain(make_spin(twice_s));
        INFO("2s = " << twice_s);
        const auto all_plus = fixed_randomness(chain, kZ, kZ, kZ);
        CHECK(alice_output(kZ, chain, all_plus).alpha == HalfInteger{-twice_s});
        const auto all_minus = fixed_randomness(chain, -kZ, kZ, kZ);
        CHECK(alice_output(kZ, chain, all_minus).alpha == HalfInteger{twice_s});
        const std::vector<int> ones(chain.length(), 1);
        CHECK(bob_output(kZ, chain, all_plus, ones) == HalfInteger{twice_s});
    }
}

TEST_CASE("iterative recursion agrees with the nested form", "[protocol][property]") {
    RandomStream stream(99);
    for (int twice_s = 1; twice_s <= 40; ++twice_s) {
        const auto chain = build_chain(make_spin(twice_s));
        // Map prefix dimension to chain step.
        std::map<int, std::size_t> step_of;
        for (std::size_t k = 0; k < chain.length(); ++k) {
            step_of[chain.steps()[k].prefix_dim] = k;
        }
        for (int trial = 0; trial < 50; ++trial) {
            const auto a = sample_direction(stream);
            const auto b = sample_direction(stream);
            const auto r = draw_shared_randomness(chain, stream);
            const auto alice = alice_output(a, chain, r);
            const auto beta = bob_output(b, chain, r, alice.cbits);
            auto f_at = [&](int d) {
                const auto &step = chain.steps()[step_of.at(d)];
                const double p = (d - 2.0) / d;
                return sgn(r.nus[static_cast<std::size_t>(step.nu_slot)].z() + p);
            };
            auto a_sign = [&](int d) { return sgn(a.dot(r.lambdas[step_of.at(d)])); };
            auto b_sign = [&](int d) {
                const auto k = step_of.at(d);
                const int c = sgn(a.dot(r.lambdas[k])) * sgn(a.dot(r.mus[k]));
                return sgn(b.dot(r.lambdas[k].vec() + static_cast<double>(c) * r.mus[k].vec()));
            };
            const int d = twice_s + 1;
            CHECK(alice.alpha.to_double() == -nested_accumulator(d, a_sign, f_at));
            CHECK(beta.to_double() == nested_accumulator(d, b_sign, f_at));
        }
    }
}

TEST_CASE("Bob never looks at Alice's direction", "[protocol]") {
    RandomStream stream(5);
    const auto chain = build_chain(make_spin(6));
    for (int i = 0; i < 200; ++i) {
        const auto a = sample_direction(stream);
        const auto b = sample_direction(stream);
        const auto r = draw_shared_randomness(chain, stream);
        const auto alice = alice_output(a, chain, r);
        const auto beta = bob_output(b, chain, r, alice.cbits);
        // A different a with the same transcript leaves beta unchanged.
        const auto other = sample_direction(stream);
        (void)alice_output(other, chain, r);
        CHECK(bob_output(b, chain, r, alice.cbits) == beta);
    }
}

TEST_CASE("run_trial edge cases", "[protocol]") {
    RandomStream stream(11);
    const auto zero = run_trial(kZ, kX, build_chain(make_spin(0)), stream);
    CHECK(zero.alpha == HalfInteger{0});
    CHECK(zero.beta == HalfInteger{0});
    CHECK(zero.cbits.empty());

    const auto chain = build_chain(make_spin(4));
    RandomStream s1(123);
    RandomStream s2(123);
    const auto t1 = run_trial(kZ, kZ, chain, s1);
    const auto t2 = run_trial(kZ, kZ, chain, s2);
    CHECK(t1 == t2);
    CHECK(t1.cbits.size() == 2);
}

TEST_CASE("TrialEvaluator reproduces run_trial", "[protocol]") {
    for (int twice_s : {1, 2, 5, 6, 13, 30}) {
        const auto chain = build_chain(make_spin(twice_s));
        TrialEvaluator evaluator(chain);
        const RandomStream root(77);
        RandomStream dirs(78);
        TrialOutcome fast;
        for (std::uint64_t t = 0; t < 500; ++t) {
            const auto a = sample_direction(dirs);
            const auto b = sample_direction(dirs);
            auto s1 = root.split(t);
            auto s2 = root.split(t);
            evaluator.run(a, b, s1, fast);
            CHECK(fast == run_trial(a, b, chain, s2));
        }
    }
}

TEST_CASE("run_trial_rotated", "[protocol]") {
    const auto chain = build_chain(make_spin(5));
    const auto b = Direction::normalized({0.2, 0.4, -0.894427191});
    for (std::uint64_t t = 0; t < 200; ++t) {
        RandomStream s1(t);
        RandomStream s2(t);
        CHECK(run_trial_rotated(kX, b, Mat3::identity(), chain, s1) ==
              run_trial(kX, b, chain, s2));
        const Mat3 rz_pi{{-1, 0, 0, 0, -1, 0, 0, 0, 1}};
        RandomStream s3(t);
        RandomStream s4(t);
        CHECK(run_trial_rotated(kX, b, rz_pi, chain, s3) == run_trial(-kX, b, chain, s4));
    }
    RandomStream s(0);
    const Mat3 shear{{1, 0.1, 0, 0, 1, 0, 0, 0, 1}};
    CHECK_THROWS_AS(run_trial_rotated(kX, b, shear, chain, s), std::invalid_argument);
    const Mat3 reflection{{-1, 0, 0, 0, 1, 0, 0, 0, 1}};
    CHECK_THROWS_AS(run_trial_rotated(kX, b, reflection, chain, s), std::invalid_argument);
}

TEST_CASE("outputs stay inside the support", "[protocol][property]") {
    RandomStream dirs(8);
    for (int twice_s = 1; twice_s <= 15; ++twice_s) {
        const auto chain = build_chain(make_spin(twice_s));
        const auto a = sample_direction(dirs);
        const auto b = sample_direction(dirs);
        const auto tally = simulate_parallel(
            chain, {a, b, 100'000, static_cast<std::uint64_t>(twice_s)}, 0);
        INFO("2s = " << twice_s);
        CHECK(tally.out_of_support == 0);
        CHECK(tally.min_cbits == static_cast<std::int64_t>(chain.length()));
        CHECK(tally.max_cbits == static_cast<std::int64_t>(chain.length()));
    }
}

TEST_CASE("singlet correlation at a = b for s = 1/2", "[protocol][statistical]") {
    const auto chain = build_chain(make_spin(1));
    const auto tally = simulate_parallel(chain, {kZ, kZ, 1'000'000, 31}, 0);
    const auto est = tally.moments.estimate();
    CHECK(z_test(est, -0.25) <= 5.0);
}

TEST_CASE("marginals are uniform", "[protocol][statistical]") {
    const auto a = Direction::normalized({0.6, 0.0, 0.8});
    const auto b = Direction::normalized({0.0, 0.6, -0.8});
    for (int twice_s = 1; twice_s <= 6; ++twice_s) {
        const auto spin = make_spin(twice_s);
        const auto tally = simulate_parallel(build_chain(spin),
                                             {a, b, 1'000'000, 500u + twice_s}, 0);
        const double p = 1.0 / spin.dimension();
        const double se = proportion_std_error(p, tally.trials());
        INFO("2s = " << twice_s);
        for (std::size_t i = 0; i < tally.alpha_counts.size(); ++i) {
            const double fa = static_cast<double>(tally.alpha_counts[i]) / tally.trials();
            const double fb = static_cast<double>(tally.beta_counts[i]) / tally.trials();
            CHECK(std::abs(fa - p) <= 5.0 * se);
            CHECK(std::abs(fb - p) <= 5.0 * se);
        }
    }
}

TEST_CASE("alpha marginal does not depend on a", "[protocol][statistical]") {
    // Chi-square test of homogeneity across three measurement directions.
    const std::vector<Direction> inputs{kZ, kX, Direction::normalized({1, 1, 1}, 1.0)};
    for (int twice_s : {2, 5, 6}) {
        const auto chain = build_chain(make_spin(twice_s));
        std::vector<std::vector<std::int64_t>> rows;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            rows.push_back(simulate_parallel(chain, {inputs[i], kZ, 300'000, 900 + i}, 0)
                               .alpha_counts);
        }
        const std::size_t d = rows[0].size();
        std::vector<double> col(d, 0.0);
        double total = 0.0;
        for (const auto &r : rows) {
            for (std::size_t j = 0; j < d; ++j) {
                col[j] += static_cast<double>(r[j]);
                total += static_cast<double>(r[j]);
            }
        }
        double chi2 = 0.0;
        for (const auto &r : rows) {
            double row_total = 0.0;
            for (auto v : r) {
                row_total += static_cast<double>(v);
            }
            for (std::size_t j = 0; j < d; ++j) {
                const double e = row_total * col[j] / total;
                chi2 += (static_cast<double>(r[j]) - e) * (static_cast<double>(r[j]) - e) / e;
            }
        }
        const int dof = static_cast<int>((rows.size() - 1) * (d - 1));
        INFO("2s = " << twice_s << " chi2 = " << chi2);
        CHECK(chi_square_sf(chi2, dof) > 1e-3);
    }
}

TEST_CASE("rotated inputs follow the rotated correlation", "[protocol][statistical]") {
    const auto spin = make_spin(4);
    const auto chain = build_chain(spin);
    const auto rotation = Mat3::axis_angle(Direction::normalized({1, 2, 2}, 2.0), 0.9);
    const auto a = Direction::normalized({0.0, 0.6, 0.8});
    const auto b = Direction::normalized({0.8, 0.0, 0.6});
    SimulationRequest request{a, b, 1'000'000, 4242};
    request.rotation = rotation;
    const auto tally = simulate_parallel(chain, request, 0);
    const double cos_rot = rotation.apply(a.vec()).dot(b.vec());
    CHECK(z_test(tally.moments.estimate(), singlet_correlation(spin, cos_rot)) <= 5.0);
    // Serial path gives the same tally.
    request.trials = 20'000;
    CHECK(simulate_reference(chain, request) == simulate_parallel(chain, request, 0));
}
