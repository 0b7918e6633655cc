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
#include "singlet/primitives.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "singlet/montecarlo.hpp"
#include "singlet/protocol.hpp"

#ifdef SINGLET_USE_OPENMP
#include <omp.h>
#endif

namespace singlet {

namespace {

struct IntegerMoments {
    std::int64_t sum{0};
    std::int64_t sum_sq{0};
    void add(std::int64_t v) {
        sum += v;
        sum_sq += v * v;
    }
};

enum Quantity : std::size_t {
    kAlicePlus,
    kAliceMean,
    kBobPlus,
    kBobMean,
    kSameStep,
    kCrossStep,
    kFPlus0,
    kFPlus1,
    kFPlus2,
    kFMean0,
    kFMean1,
    kFMean2,
    kFSquare0,
    kFSquare1,
    kFSquare2,
    kGatedSameStep,
    kGatedCrossStep,
    kDoubleGate,
    kDoubleGatedSameStep,
    kQuantityCount
};

using Moments = std::array<IntegerMoments, kQuantityCount>;

void sample_once(const Direction &a, const Direction &b, RandomStream &stream,
                 Moments &m) {
    const auto lambda1 = sample_direction(stream);
    const auto mu1 = sample_direction(stream);
    const auto lambda2 = sample_direction(stream);
    const auto mu2 = sample_direction(stream);
    std::array<int, 3> f{};
    for (std::size_t k = 0; k < f.size(); ++k) {
        f[k] = f_bit(sample_direction(stream), kBatteryBiases[k]);
    }
    const int x1 = sgn_unchecked(a.dot(lambda1));
    const int x2 = sgn_unchecked(a.dot(lambda2));
    const int c1 = c_bit(a, lambda1, mu1);
    const int c2 = c_bit(a, lambda2, mu2);
    const int y1 = sgn_unchecked(b.dot(lambda1.vec() + static_cast<double>(c1) * mu1.vec()));
    const int y2 = sgn_unchecked(b.dot(lambda2.vec() + static_cast<double>(c2) * mu2.vec()));

    m[kAlicePlus].add(x1 > 0 ? 1 : 0);
    m[kAliceMean].add(x1);
    m[kBobPlus].add(y1 > 0 ? 1 : 0);
    m[kBobMean].add(y1);
    m[kSameStep].add(x1 * y1);
    m[kCrossStep].add(x1 * y2);
    for (std::size_t k = 0; k < f.size(); ++k) {
        m[kFPlus0 + k].add(f[k] > 0 ? 1 : 0);
        m[kFMean0 + k].add(f[k]);
        m[kFSquare0 + k].add((1 + f[k]) * (1 + f[k]));
    }
    const int g0 = (1 + f[0]) * (1 + f[0]);
    const int g2 = (1 + f[2]) * (1 + f[2]);
    m[kGatedSameStep].add(g0 * x2 * y2);
    m[kGatedCrossStep].add(g0 * x1 * y2);
    m[kDoubleGate].add(g0 * g2);
    m[kDoubleGatedSameStep].add(g0 * g2 * x1 * y1);
}

} // namespace

bool PrimitiveBattery::all_pass() const {
    for (const auto &c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return !checks.empty();
}

const PrimitiveCheck &PrimitiveBattery::find(const std::string &name) const {
    for (const auto &c : checks) {
        if (c.name == name) {
            return c;
        }
    }
    throw std::out_of_range("no primitive check named " + name);
}

PrimitiveBattery run_primitive_battery(const Direction &a, const Direction &b,
                                       std::int64_t samples, std::uint64_t seed,
                                       int workers, double z_max) {
    if (samples < 2) {
        throw std::invalid_argument("primitive battery needs >= 2 samples");
    }
    const int threads = workers > 0 ? workers : max_workers();
    std::vector<Moments> partial(static_cast<std::size_t>(threads));
    const RandomStream root(seed);

#ifdef SINGLET_USE_OPENMP
#pragma omp parallel num_threads(threads)
#endif
    {
#ifdef SINGLET_USE_OPENMP
        auto &mine = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
#else
        auto &mine = partial[0];
#endif
        for (std::int64_t i = 0; i < samples; ++i) {
            auto stream = root.split(static_cast<std::uint64_t>(i));
            sample_once(a, b, stream, mine);
        }
    }
    Moments total{};
    for (const auto &p : partial) {
        for (std::size_t q = 0; q < kQuantityCount; ++q) {
            total[q].sum += p[q].sum;
            total[q].sum_sq += p[q].sum_sq;
        }
    }

    PrimitiveBattery out;
    out.samples = samples;
    out.z_max = z_max;
    const auto n = static_cast<double>(samples);
    auto add_check = [&](std::string name, Quantity q, double target,
                         bool proportion) {
        const double mean = static_cast<double>(total[q].sum) / n;
        double se = 0.0;
        if (proportion) {
            se = std::sqrt(mean * (1.0 - mean) / n);
        } else {
            const double var =
                (static_cast<double>(total[q].sum_sq) - n * mean * mean) / (n - 1.0);
            se = std::sqrt(std::max(var, 0.0) / n);
        }
        PrimitiveCheck c;
        c.name = std::move(name);
        c.estimate = mean;
        c.target = target;
        c.std_error = se;
        const double diff = std::abs(mean - target);
        c.z = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : INFINITY);
        c.pass = c.z <= z_max;
        out.checks.push_back(std::move(c));
    };

    const double ab = a.dot(b);
    const auto &p = kBatteryBiases;
    add_check("prob_sgn_a_lambda_plus", kAlicePlus, 0.5, true);
    add_check("mean_sgn_a_lambda", kAliceMean, 0.0, false);
    add_check("prob_sgn_b_lambda_c_mu_plus", kBobPlus, 0.5, true);
    add_check("mean_sgn_b_lambda_c_mu", kBobMean, 0.0, false);
    add_check("same_step_correlation", kSameStep, ab, false);
    add_check("cross_step_correlation", kCrossStep, 0.0, false);
    const char *tags[3] = {"1/3", "3/5", "5/7"};
    for (std::size_t k = 0; k < 3; ++k) {
        const auto qk = static_cast<Quantity>(kFPlus0 + k);
        add_check(std::string("prob_f_plus_p=") + tags[k], qk, (1.0 + p[k]) / 2.0, true);
    }
    for (std::size_t k = 0; k < 3; ++k) {
        const auto qk = static_cast<Quantity>(kFMean0 + k);
        add_check(std::string("mean_f_p=") + tags[k], qk, p[k], false);
    }
    for (std::size_t k = 0; k < 3; ++k) {
        const auto qk = static_cast<Quantity>(kFSquare0 + k);
        add_check(std::string("mean_one_plus_f_squared_p=") + tags[k], qk,
                  2.0 * (1.0 + p[k]), false);
    }
    add_check("gated_same_step_correlation", kGatedSameStep, 2.0 * (1.0 + p[0]) * ab,
              false);
    add_check("gated_cross_step_correlation", kGatedCrossStep, 0.0, false);
    add_check("double_gate_moment", kDoubleGate, 4.0 * (1.0 + p[0]) * (1.0 + p[2]),
              false);
    add_check("double_gated_same_step_correlation", kDoubleGatedSameStep,
              4.0 * (1.0 + p[0]) * (1.0 + p[2]) * ab, false);
    return out;
}

} // namespace singlet
