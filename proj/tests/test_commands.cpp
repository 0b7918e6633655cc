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

#include <cstdlib>
#include <sstream>
#include <string>

#include "singlet/commands.hpp"

using namespace singlet;
using nlohmann::json;

namespace {

RunConfig small_run(int twice_s) {
    RunConfig config;
    config.spin = make_spin(twice_s);
    config.a = Direction::z_axis();
    config.b = Direction::normalized({0.6, 0.0, 0.8});
    config.trials = 20'000;
    config.seed = 42;
    return config;
}

} // namespace

TEST_CASE("parse_direction", "[commands]") {
    const auto d = parse_direction("0.6, 0, 0.8", false);
    CHECK(d.x() == Catch::Approx(0.6));
    CHECK(d.z() == Catch::Approx(0.8));
    const auto s = parse_direction("1.5707963267948966,0", true);
    CHECK(s.x() == Catch::Approx(1.0));
    CHECK_THROWS_AS(parse_direction("0,0,2", false), std::invalid_argument);
    CHECK_THROWS_AS(parse_direction("1,0", false), std::invalid_argument);
    CHECK_THROWS_AS(parse_direction("a,b,c", false), std::invalid_argument);
    CHECK_THROWS_AS(parse_direction("nan,0,1", false), std::invalid_argument);
}

TEST_CASE("parse_rational and parse_format", "[commands]") {
    CHECK(parse_rational("1/100") == Rational(1, 100));
    CHECK(parse_rational("0.01") == Rational(1, 100));
    CHECK(parse_rational("-3") == Rational(-3));
    CHECK(parse_rational("-0.5") == Rational(-1, 2));
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK(parse_format("csv") == OutputFormat::Csv);
    CHECK(parse_format("table") == OutputFormat::Table);
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("seed comes from the environment when set", "[commands]") {
    ::unsetenv("SINGLET_SIM_SEED");
    CHECK(default_seed() == kDefaultSeed);
    ::setenv("SINGLET_SIM_SEED", "12345", 1);
    CHECK(default_seed() == 12345);
    ::setenv("SINGLET_SIM_SEED", "0x10", 1);
    CHECK(default_seed() == 16);
    ::setenv("SINGLET_SIM_SEED", "bogus", 1);
    CHECK_THROWS_AS(default_seed(), std::invalid_argument);
    ::unsetenv("SINGLET_SIM_SEED");
}

TEST_CASE("simulate reports are identical across worker counts", "[commands]") {
    auto config = small_run(5);
    config.workers = 1;
    const auto one = render(cmd_simulate(config), OutputFormat::Json);
    for (int workers : {2, 4}) {
        config.workers = workers;
        CHECK(render(cmd_simulate(config), OutputFormat::Json) == one);
    }
    config.seed = 43;
    CHECK(render(cmd_simulate(config), OutputFormat::Json) != one);
}

TEST_CASE("simulate report contents", "[commands]") {
    const auto report = cmd_simulate(small_run(2));
    CHECK(report.at("schema") == kReportSchema);
    CHECK(report.at("spin") == "1");
    CHECK(report.at("communication_cost") == 1);
    CHECK(report.at("randomness_budget").at("n_nu") == 1);
    CHECK(report.at("trials") == 20'000);
    CHECK(report.at("target").get<double>() == Catch::Approx(-2.0 / 3.0 * 0.8));
    CHECK(report.at("exact_correlation").get<double>() == Catch::Approx(-2.0 / 3.0 * 0.8));
    CHECK(report.at("joint").size() == 9);
    CHECK(report.at("out_of_support") == 0);
    CHECK(report.at("cbits_per_trial").at("max") == 1);
    CHECK(std::abs(report.at("z_score").get<double>()) <= 5.0);
}

TEST_CASE("simulate CSV has a header and one row per cell", "[commands]") {
    const auto csv = render(cmd_simulate(small_run(1)), OutputFormat::Csv);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "alpha,beta,count,probability,exact_probability");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
    }
    CHECK(rows == 4);
}

TEST_CASE("trial count is validated", "[commands]") {
    auto config = small_run(1);
    config.trials = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.trials = kMaxTrials + 1;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("transcripts are JSON lines", "[commands]") {
    std::ostringstream os;
    write_transcripts(os, small_run(6), 5);
    std::istringstream in(os.str());
    std::string line;
    int count = 0;
    while (std::getline(in, line)) {
        const auto rec = json::parse(line);
        CHECK(rec.at("trial") == count);
        CHECK(rec.at("cbits").size() == 2);
        CHECK(rec.at("f_bits").size() == 2);
        ++count;
    }
    CHECK(count == 5);
    CHECK(outcome_json(HalfInteger{3}) == "3/2");
    CHECK(outcome_json(HalfInteger{-4}) == -2);
}

TEST_CASE("cost table rows", "[commands]") {
    const auto report = cmd_cost_table(7);
    const auto &rows = report.at("rows");
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].at("s") == "0");
    CHECK(rows[0].at("n") == 0);
    CHECK(rows[6].at("s") == "3");
    CHECK(rows[6].at("binary") == "111");
    CHECK(rows[6].at("n") == 2);
    CHECK(rows[6].at("n_nu") == 2);
    const auto csv = render(report, OutputFormat::Csv);
    CHECK(csv.find("s,d,binary,n,n_lambda,n_mu,n_nu\n") == 0);
    CHECK(csv.find("3,7,111,2,2,2,2\n") != std::string::npos);
}

TEST_CASE("compare-joint for spin 1/2 and spin 0", "[commands]") {
    const auto half = cmd_compare_joint(make_spin(1), Direction::z_axis(), Direction::x_axis());
    CHECK(half.at("total_variation").get<double>() <= 1e-9);
    CHECK(half.at("marginals_agree") == true);
    CHECK(half.at("correlation_agrees") == true);

    const auto zero = cmd_compare_joint(make_spin(0), Direction::z_axis(), Direction::x_axis());
    CHECK(zero.at("total_variation").get<double>() <= 1e-12);
    CHECK(zero.at("protocol").at("entries").size() == 1);

    const auto three = cmd_compare_joint(make_spin(6), Direction::z_axis(),
                                         Direction::normalized({0.6, 0.0, 0.8}));
    CHECK(three.at("marginals_agree") == true);
    CHECK(three.at("correlation_agrees") == true);
    const auto csv = render(three, OutputFormat::Csv);
    CHECK(csv.find("source,alpha,beta,probability\n") == 0);
}

TEST_CASE("verify passes on the protocol and fails on a perturbed one", "[commands]") {
    VerifyConfig config;
    config.spin_max_twice = 6;
    config.pairs = 4;
    config.trials = 20'000;
    config.seed = 3;
    const auto good = cmd_verify(config);
    CHECK(good.at("passed") == true);
    CHECK(good.at("spins").size() == 6);

    config.perturbation.bias_delta = Rational(1, 100);
    const auto bad = cmd_verify(config);
    CHECK(bad.at("passed") == false);
    CHECK(bad.at("spins")[0].at("passed") == true);
    CHECK(bad.at("spins")[1].at("enumeration_ok") == false);
}

TEST_CASE("error reports", "[commands]") {
    const auto err = error_report("invalid_argument", "bad spin");
    CHECK(err.at("error").at("kind") == "invalid_argument");
    CHECK(render(err, OutputFormat::Csv).find("bad spin") != std::string::npos);
}
