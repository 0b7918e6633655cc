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
 * @file montecarlo.hpp
 * Monte Carlo trial loops: an OpenMP kernel and the serial reference it is
 * tested against.
 *
 * Trial t always draws from RandomStream(seed).split(t), and every tally is
 * an integer count, so results do not depend on the worker count or on the
 * order partial tallies are merged.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "geometry.hpp"
#include "protocol.hpp"
#include "spin.hpp"
#include "statistics.hpp"

namespace singlet {

struct TrialTally {
    SpinValue spin;
    ProductMoments moments;
    /// Indexed by support_index (s first, -s last).
    std::vector<std::int64_t> alpha_counts;
    std::vector<std::int64_t> beta_counts;
    /// alpha index * d + beta index.
    std::vector<std::int64_t> joint_counts;
    /// Trials whose alpha or beta fell outside the support.
    std::int64_t out_of_support{0};
    std::int64_t cbits_sent{0};
    std::int64_t min_cbits{0};
    std::int64_t max_cbits{0};

    explicit TrialTally(SpinValue s = {});

    void add(const TrialOutcome &outcome);
    void merge(const TrialTally &other);
    [[nodiscard]] std::int64_t trials() const { return moments.count; }

    friend bool operator==(const TrialTally &, const TrialTally &) = default;
};

struct SimulationRequest {
    Direction a;
    Direction b;
    std::int64_t trials{0};
    std::uint64_t seed{kDefaultSeed};
    /// Applied to Alice's direction when not identity.
    Mat3 rotation{};
};

/// Straightforward loop over run_trial / run_trial_rotated.
[[nodiscard]] TrialTally simulate_reference(const BinaryChain &chain,
                                            const SimulationRequest &request);

/// OpenMP kernel; @p workers <= 0 uses the OpenMP default.
[[nodiscard]] TrialTally simulate_parallel(const BinaryChain &chain,
                                           const SimulationRequest &request,
                                           int workers);

/// Outcomes of trials [0, count), in order.
[[nodiscard]] std::vector<TrialOutcome>
collect_transcripts(const BinaryChain &chain, const SimulationRequest &request,
                    std::int64_t count);

/// Number of OpenMP threads available, 1 without OpenMP.
[[nodiscard]] int max_workers();

} // namespace singlet
