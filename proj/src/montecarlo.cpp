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
#include "singlet/montecarlo.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef SINGLET_USE_OPENMP
#include <omp.h>
#endif

namespace singlet {

TrialTally::TrialTally(SpinValue s)
    : spin{s}, alpha_counts(static_cast<std::size_t>(s.dimension())),
      beta_counts(static_cast<std::size_t>(s.dimension())),
      joint_counts(static_cast<std::size_t>(s.dimension() * s.dimension())) {}

void TrialTally::add(const TrialOutcome &outcome) {
    moments.add(outcome.alpha, outcome.beta);
    const auto n = static_cast<std::int64_t>(outcome.cbits.size());
    if (moments.count == 1) {
        min_cbits = max_cbits = n;
    } else {
        min_cbits = std::min(min_cbits, n);
        max_cbits = std::max(max_cbits, n);
    }
    cbits_sent += n;
    const int ia = support_index(spin, outcome.alpha);
    const int ib = support_index(spin, outcome.beta);
    if (ia < 0 || ib < 0) {
        ++out_of_support;
        return;
    }
    ++alpha_counts[static_cast<std::size_t>(ia)];
    ++beta_counts[static_cast<std::size_t>(ib)];
    ++joint_counts[static_cast<std::size_t>(ia * spin.dimension() + ib)];
}

void TrialTally::merge(const TrialTally &other) {
    if (other.spin != spin) {
        throw std::invalid_argument("TrialTally: merging different spins");
    }
    if (other.moments.count == 0) {
        return;
    }
    if (moments.count == 0) {
        min_cbits = other.min_cbits;
        max_cbits = other.max_cbits;
    } else {
        min_cbits = std::min(min_cbits, other.min_cbits);
        max_cbits = std::max(max_cbits, other.max_cbits);
    }
    moments.merge(other.moments);
    for (std::size_t i = 0; i < alpha_counts.size(); ++i) {
        alpha_counts[i] += other.alpha_counts[i];
        beta_counts[i] += other.beta_counts[i];
    }
    for (std::size_t i = 0; i < joint_counts.size(); ++i) {
        joint_counts[i] += other.joint_counts[i];
    }
    out_of_support += other.out_of_support;
    cbits_sent += other.cbits_sent;
}

namespace {

void check_request(const SimulationRequest &request) {
    if (request.trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
    if (!request.rotation.is_rotation()) {
        throw std::invalid_argument(
            "rotation must be orthogonal with determinant +1");
    }
}

Direction effective_a(const SimulationRequest &request) {
    return Direction::from_unit(request.rotation.apply(request.a.vec()));
}

} // namespace

TrialTally simulate_reference(const BinaryChain &chain,
                              const SimulationRequest &request) {
    check_request(request);
    const RandomStream root(request.seed);
    TrialTally tally(chain.spin());
    for (std::int64_t t = 0; t < request.trials; ++t) {
        auto stream = root.split(static_cast<std::uint64_t>(t));
        tally.add(run_trial_rotated(request.a, request.b, request.rotation, chain,
                                    stream));
    }
    return tally;
}

TrialTally simulate_parallel(const BinaryChain &chain,
                             const SimulationRequest &request, int workers) {
    check_request(request);
    const Direction a = effective_a(request);
    const Direction b = request.b;
    const RandomStream root(request.seed);
    const std::int64_t trials = request.trials;
    const int threads = workers > 0 ? workers : max_workers();
    std::vector<TrialTally> partial(static_cast<std::size_t>(threads),
                                    TrialTally(chain.spin()));

#ifdef SINGLET_USE_OPENMP
#pragma omp parallel num_threads(threads)
#endif
    {
#ifdef SINGLET_USE_OPENMP
        const auto tid = static_cast<std::size_t>(omp_get_thread_num());
#else
        const std::size_t tid = 0;
#endif
        TrialEvaluator evaluator(chain);
        TrialOutcome outcome;
        auto &mine = partial[tid];
#ifdef SINGLET_USE_OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t t = 0; t < trials; ++t) {
            auto stream = root.split(static_cast<std::uint64_t>(t));
            evaluator.run(a, b, stream, outcome);
            mine.add(outcome);
        }
    }

    TrialTally total(chain.spin());
    for (const auto &p : partial) {
        total.merge(p);
    }
    return total;
}

std::vector<TrialOutcome> collect_transcripts(const BinaryChain &chain,
                                              const SimulationRequest &request,
                                              std::int64_t count) {
    check_request(request);
    const RandomStream root(request.seed);
    std::vector<TrialOutcome> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
    for (std::int64_t t = 0; t < count; ++t) {
        auto stream = root.split(static_cast<std::uint64_t>(t));
        out.push_back(run_trial_rotated(request.a, request.b, request.rotation,
                                        chain, stream));
    }
    return out;
}

int max_workers() {
#ifdef SINGLET_USE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace singlet
