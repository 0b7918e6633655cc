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
#include "singlet/statistics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace singlet {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

// Series for P(a, x), convergent for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            break;
        }
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a, x), x >= a + 1.
double gamma_q_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = b + an / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            break;
        }
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_gamma_args(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) {
        throw std::domain_error("incomplete gamma needs a > 0 and x >= 0");
    }
}

} // namespace

double gamma_p(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) {
        return 0.0;
    }
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_fraction(a, x);
}

double gamma_q(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) {
        return 1.0;
    }
    return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_fraction(a, x);
}

double chi_square_sf(double statistic, int dof) {
    if (dof < 1) {
        throw std::invalid_argument("chi-square needs dof >= 1");
    }
    return gamma_q(0.5 * dof, 0.5 * std::max(statistic, 0.0));
}

CorrelationEstimate ProductMoments::estimate() const {
    if (count < 2) {
        throw std::invalid_argument("correlation estimate needs at least 2 samples");
    }
    const auto n = static_cast<__int128>(count);
    // Products are in units of 1/4, squares in units of 1/16.
    const __int128 centered = n * sum_sq - static_cast<__int128>(sum) * sum;
    const double variance = static_cast<double>(centered) /
                            (16.0 * static_cast<double>(n) *
                             static_cast<double>(n - 1));
    CorrelationEstimate out;
    out.n_trials = count;
    out.mean = static_cast<double>(sum) / (4.0 * static_cast<double>(count));
    out.std_error = std::sqrt(std::max(variance, 0.0) / static_cast<double>(count));
    return out;
}

CorrelationEstimate
estimate_correlation(std::span<const std::pair<HalfInteger, HalfInteger>> samples) {
    ProductMoments m;
    for (const auto &[alpha, beta] : samples) {
        m.add(alpha, beta);
    }
    return m.estimate();
}

UniformityReport chi_square_uniform(std::span<const std::int64_t> counts) {
    if (counts.size() < 2) {
        throw std::invalid_argument("chi-square needs at least 2 categories");
    }
    std::int64_t total = 0;
    for (const auto c : counts) {
        if (c < 0) {
            throw std::invalid_argument("negative count");
        }
        total += c;
    }
    if (total == 0) {
        throw std::invalid_argument("chi-square over an empty sample");
    }
    UniformityReport out;
    out.counts.assign(counts.begin(), counts.end());
    const double expected =
        static_cast<double>(total) / static_cast<double>(counts.size());
    for (const auto c : counts) {
        const double diff = static_cast<double>(c) - expected;
        out.chi_square += diff * diff / expected;
    }
    out.degrees_of_freedom = static_cast<int>(counts.size()) - 1;
    out.p_value = chi_square_sf(out.chi_square, out.degrees_of_freedom);
    return out;
}

double z_test(const CorrelationEstimate &estimate, double target) {
    const double diff = std::abs(estimate.mean - target);
    if (estimate.std_error == 0.0) {
        return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return diff / estimate.std_error;
}

double proportion_std_error(double p, std::int64_t n) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

} // namespace singlet
