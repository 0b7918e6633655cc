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

#include "singlet/primitives.hpp"

using namespace singlet;

TEST_CASE("primitive battery passes", "[primitives][statistical]") {
    const auto a = Direction::normalized({0.0, 0.6, 0.8});
    const auto b = Direction::normalized({0.48, 0.64, -0.6});
    const auto battery = run_primitive_battery(a, b, 400'000, 17);
    for (const auto &check : battery.checks) {
        INFO(check.name << " estimate " << check.estimate << " target " << check.target);
        CHECK(check.pass);
    }
    CHECK(battery.find("same_step_correlation").target == Catch::Approx(a.dot(b)));
    CHECK(battery.find("cross_step_correlation").target == 0.0);
    CHECK(battery.find("prob_f_plus_p=3/5").target == Catch::Approx(0.8));
    CHECK_THROWS(battery.find("missing"));
}

TEST_CASE("primitive battery is independent of worker count", "[primitives]") {
    const auto a = Direction::z_axis();
    const auto b = Direction::x_axis();
    const auto one = run_primitive_battery(a, b, 20'000, 5, 1);
    const auto four = run_primitive_battery(a, b, 20'000, 5, 4);
    REQUIRE(one.checks.size() == four.checks.size());
    for (std::size_t i = 0; i < one.checks.size(); ++i) {
        CHECK(one.checks[i].estimate == four.checks[i].estimate);
        CHECK(one.checks[i].std_error == four.checks[i].std_error);
    }
}
