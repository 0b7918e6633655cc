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
 * @file primitives.hpp
 * Monte Carlo battery for the statistical facts the protocol rests on: Sgn
 * marginals of a.lambda and b.(lambda + c mu), their per-step correlation
 * a.b, independence across steps, and the f-bit moments.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "random.hpp"

namespace singlet {

struct PrimitiveCheck {
    std::string name;
    double estimate{0.0};
    double target{0.0};
    double std_error{0.0};
    double z{0.0};
    bool pass{false};
};

struct PrimitiveBattery {
    std::int64_t samples{0};
    double z_max{5.0};
    std::vector<PrimitiveCheck> checks;

    [[nodiscard]] bool all_pass() const;
    [[nodiscard]] const PrimitiveCheck &find(const std::string &name) const;
};

/// The f-bit biases exercised by the battery: 1/3, 3/5, 5/7.
inline constexpr double kBatteryBiases[3] = {1.0 / 3.0, 3.0 / 5.0, 5.0 / 7.0};

/**
 * @brief Run every primitive check on @p samples draws.
 *
 * Sample i uses RandomStream(seed).split(i); tallies are integer, so the
 * result is independent of @p workers.
 */
[[nodiscard]] PrimitiveBattery run_primitive_battery(const Direction &a,
                                                     const Direction &b,
                                                     std::int64_t samples,
                                                     std::uint64_t seed,
                                                     int workers = 0,
                                                     double z_max = 5.0);

} // namespace singlet
