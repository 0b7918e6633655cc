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
#include <benchmark/benchmark.h>

#include "singlet/enumeration.hpp"
#include "singlet/montecarlo.hpp"
#include "singlet/primitives.hpp"

using namespace singlet;

namespace {

const Direction kA = Direction::normalized({0.0, 0.6, 0.8});
const Direction kB = Direction::normalized({0.48, 0.64, -0.6});

void BM_SimulateReference(benchmark::State &state) {
    const auto chain = build_chain(make_spin(static_cast<int>(state.range(0))));
    const SimulationRequest request{kA, kB, 100'000, 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_reference(chain, request));
    }
    state.SetItemsProcessed(state.iterations() * request.trials);
}

void BM_SimulateParallel(benchmark::State &state) {
    const auto chain = build_chain(make_spin(static_cast<int>(state.range(0))));
    const SimulationRequest request{kA, kB, 100'000, 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_parallel(chain, request, 0));
    }
    state.SetItemsProcessed(state.iterations() * request.trials);
}

void BM_PrimitiveBattery(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_primitive_battery(kA, kB, 100'000, 1));
    }
    state.SetItemsProcessed(state.iterations() * 100'000);
}

void BM_ExactJoint(benchmark::State &state) {
    const auto chain = build_chain(make_spin(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_joint(chain, 0.3));
    }
}

} // namespace

BENCHMARK(BM_SimulateReference)->Arg(1)->Arg(6)->Arg(15)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateParallel)->Arg(1)->Arg(6)->Arg(15)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrimitiveBattery)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactJoint)->Arg(6)->Arg(15)->Arg(40)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
