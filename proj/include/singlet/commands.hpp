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
 * @file commands.hpp
 * Report-producing commands behind the singlet_sim CLI.
 *
 * Every report is a JSON object with "schema": 1. Reports are pure functions
 * of their configuration; wall time and worker count are not part of them.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "enumeration.hpp"
#include "geometry.hpp"
#include "montecarlo.hpp"
#include "random.hpp"
#include "spin.hpp"

namespace singlet {

inline constexpr int kReportSchema = 1;
/// Largest spin accepted by verify, as 2s.
inline constexpr int kEnumerationGuardTwiceS = 40;
inline constexpr std::int64_t kMaxTrials = 1'000'000'000'000;

enum class OutputFormat { Json, Csv, Table };

[[nodiscard]] OutputFormat parse_format(std::string_view text);

/// "x,y,z" or, with @p spherical, "theta,phi" in radians.
[[nodiscard]] Direction parse_direction(std::string_view text, bool spherical);

/// "p/q", an integer or a decimal such as "0.01", converted exactly.
[[nodiscard]] Rational parse_rational(std::string_view text);

/// Seed from SINGLET_SIM_SEED when set, otherwise kDefaultSeed.
[[nodiscard]] std::uint64_t default_seed();

struct Perturbation {
    Rational bias_delta;
    int coefficient_delta_twice{0};
    std::optional<std::size_t> step;

    [[nodiscard]] bool active() const {
        return bias_delta != Rational(0) || coefficient_delta_twice != 0;
    }
    [[nodiscard]] BinaryChain apply(const BinaryChain &chain) const;
};

struct RunConfig {
    SpinValue spin;
    Direction a;
    Direction b;
    std::int64_t trials{1'000'000};
    std::uint64_t seed{kDefaultSeed};
    int workers{0};
    OutputFormat format{OutputFormat::Json};
    Perturbation perturbation;

    /// @throws std::invalid_argument on a bad trial count.
    void validate() const;
};

[[nodiscard]] nlohmann::json cmd_simulate(const RunConfig &config);

/// JSON-lines transcript records for trials [0, count).
void write_transcripts(std::ostream &os, const RunConfig &config,
                       std::int64_t count);
[[nodiscard]] nlohmann::json transcript_record(std::int64_t trial,
                                               const TrialOutcome &outcome);

struct VerifyConfig {
    int spin_max_twice{15};
    int pairs{20};
    std::int64_t trials{100'000};
    std::uint64_t seed{kDefaultSeed};
    int workers{0};
    double tolerance{1e-10};
    double z_max{5.0};
    double p_min{1e-3};
    Perturbation perturbation;
};

/// report["passed"] is the overall verdict.
[[nodiscard]] nlohmann::json cmd_verify(const VerifyConfig &config);

[[nodiscard]] nlohmann::json cmd_cost_table(int spin_max_twice);

[[nodiscard]] nlohmann::json cmd_compare_joint(SpinValue spin, const Direction &a,
                                               const Direction &b);

[[nodiscard]] nlohmann::json cmd_primitives_check(const Direction &a,
                                                  const Direction &b,
                                                  std::int64_t samples,
                                                  std::uint64_t seed, int workers);

/// alpha,beta,probability rows in table order.
[[nodiscard]] std::string joint_to_csv(const JointDistribution &table);
[[nodiscard]] nlohmann::json joint_to_json(const JointDistribution &table);

/// Outcome as a JSON integer when integral, else a "p/2" string.
[[nodiscard]] nlohmann::json outcome_json(HalfInteger value);

/// Render a report in the requested format.
[[nodiscard]] std::string render(const nlohmann::json &report, OutputFormat format);

[[nodiscard]] nlohmann::json error_report(std::string_view kind,
                                          std::string_view message);

} // namespace singlet
