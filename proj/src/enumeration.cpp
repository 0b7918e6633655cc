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
#include "singlet/enumeration.hpp"

#include <cmath>
#include <stdexcept>

namespace singlet {

namespace {

/// Neumaier's variant of Kahan summation.
struct CompensatedSum {
    double sum{0.0};
    double carry{0.0};

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    [[nodiscard]] double value() const { return sum + carry; }
};

/// Advance a mixed-radix odometer; false once it wraps around.
bool next_config(std::vector<int> &digits, const std::vector<int> &radix) {
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (++digits[i] < radix[i]) {
            return true;
        }
        digits[i] = 0;
    }
    return false;
}

/// Visits every (x, y, f) configuration with its probability weight.
/// Pair digit 0..3 encodes x = +-1 (bit 1), y = +-1 (bit 0).
template <typename P, typename PairWeight, typename Visit>
void enumerate_joint(const BinaryChain &chain, PairWeight &&pair_weight,
                     Visit &&visit) {
    const auto &steps = chain.steps();
    const std::size_t n = steps.size();
    std::vector<int> radix(n, 4);
    for (const auto &step : steps) {
        if (step.is_integer_step()) {
            radix.push_back(2);
        }
    }
    std::vector<P> f_plus;
    for (const auto &step : steps) {
        if (step.is_integer_step()) {
            f_plus.push_back(step.f_bias.has_value()
                                 ? (P(1) + P(*step.f_bias)) * P(Rational(1, 2))
                                 : P(1));
        }
    }
    std::vector<int> digits(radix.size(), 0);
    do {
        P weight(1);
        int acc_a = 0;
        int acc_b = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const int x = (digits[k] & 2) != 0 ? -1 : 1;
            const int y = (digits[k] & 1) != 0 ? -1 : 1;
            weight = weight * pair_weight(x * y);
            const auto &step = steps[k];
            acc_a = step.coefficient.twice * x + acc_a;
            acc_b = step.coefficient.twice * y + acc_b;
            if (step.is_integer_step()) {
                const auto slot = static_cast<std::size_t>(step.nu_slot);
                const bool f_up = digits[n + slot] == 0;
                weight = weight * (f_up ? f_plus[slot] : P(1) - f_plus[slot]);
                if (!f_up) {
                    acc_a = 0;
                    acc_b = 0;
                }
            }
        }
        visit(HalfInteger{-acc_a}, HalfInteger{acc_b}, weight);
    } while (next_config(digits, radix));
}

/// Real-valued weights built from exact rationals.
struct Real {
    double v{0.0};
    Real() = default;
    explicit Real(double x) : v{x} {}
    explicit Real(const Rational &r) : v{r.to_double()} {}
    explicit Real(int x) : v{static_cast<double>(x)} {}
    friend Real operator*(Real a, Real b) { return Real{a.v * b.v}; }
    friend Real operator+(Real a, Real b) { return Real{a.v + b.v}; }
    friend Real operator-(Real a, Real b) { return Real{a.v - b.v}; }
};

void check_cos(double cos_ab) {
    if (!(cos_ab >= -1.0 && cos_ab <= 1.0)) {
        throw std::invalid_argument("cos_ab must lie in [-1, 1], got " +
                                    std::to_string(cos_ab));
    }
}

} // namespace

Rational DistributionTable::total() const {
    Rational t;
    for (const auto &[v, p] : entries) {
        t += p;
    }
    return t;
}

Rational DistributionTable::probability(HalfInteger v) const {
    const auto it = entries.find(v);
    return it == entries.end() ? Rational{} : it->second;
}

double JointDistribution::total() const {
    CompensatedSum t;
    for (const auto &[k, p] : entries) {
        t.add(p);
    }
    return t.value();
}

double JointDistribution::probability(HalfInteger alpha,
                                      HalfInteger beta) const {
    const auto it = entries.find({alpha, beta});
    return it == entries.end() ? 0.0 : it->second;
}

std::map<HalfInteger, double> JointDistribution::marginal_alpha() const {
    std::map<HalfInteger, double> out;
    for (const auto &[k, p] : entries) {
        out[k.first] += p;
    }
    return out;
}

std::map<HalfInteger, double> JointDistribution::marginal_beta() const {
    std::map<HalfInteger, double> out;
    for (const auto &[k, p] : entries) {
        out[k.second] += p;
    }
    return out;
}

double JointDistribution::correlation() const {
    CompensatedSum c;
    for (const auto &[k, p] : entries) {
        c.add(k.first.to_double() * k.second.to_double() * p);
    }
    return c.value();
}

Rational ExactJointDistribution::total() const {
    Rational t;
    for (const auto &[k, p] : entries) {
        t += p;
    }
    return t;
}

Rational ExactJointDistribution::correlation() const {
    Rational c;
    for (const auto &[k, p] : entries) {
        c += Rational(static_cast<std::int64_t>(k.first.twice) * k.second.twice,
                      4) *
             p;
    }
    return c;
}

std::map<HalfInteger, Rational> ExactJointDistribution::marginal_alpha() const {
    std::map<HalfInteger, Rational> out;
    for (const auto &[k, p] : entries) {
        out[k.first] += p;
    }
    return out;
}

std::map<HalfInteger, Rational> ExactJointDistribution::marginal_beta() const {
    std::map<HalfInteger, Rational> out;
    for (const auto &[k, p] : entries) {
        out[k.second] += p;
    }
    return out;
}

JointDistribution ExactJointDistribution::to_real() const {
    JointDistribution out;
    out.cos_ab = cos_ab.to_double();
    for (const auto &[k, p] : entries) {
        out.entries[k] = p.to_double();
    }
    return out;
}

DistributionTable exact_marginal(const BinaryChain &chain) {
    // Alice's law does not depend on Bob's signs: sum the joint at cos = 0
    // over beta, which reduces each pair weight to 1/4 per y value.
    DistributionTable out;
    const Rational quarter(1, 4);
    enumerate_joint<Rational>(
        chain, [&](int) { return quarter; },
        [&](HalfInteger alpha, HalfInteger, const Rational &w) {
            out.entries[alpha] += w;
        });
    if (chain.length() == 0) {
        out.entries = {{HalfInteger{0}, Rational(1)}};
    }
    return out;
}

JointDistribution exact_joint(const BinaryChain &chain, double cos_ab) {
    check_cos(cos_ab);
    const Real same{(1.0 + cos_ab) / 4.0};
    const Real opposite{(1.0 - cos_ab) / 4.0};
    std::map<OutcomePair, CompensatedSum> sums;
    enumerate_joint<Real>(
        chain, [&](int xy) { return xy > 0 ? same : opposite; },
        [&](HalfInteger alpha, HalfInteger beta, const Real &w) {
            sums[{alpha, beta}].add(w.v);
        });
    JointDistribution out;
    out.cos_ab = cos_ab;
    if (chain.length() == 0) {
        out.entries[{HalfInteger{0}, HalfInteger{0}}] = 1.0;
        return out;
    }
    for (const auto &[k, s] : sums) {
        out.entries[k] = s.value();
    }
    return out;
}

ExactJointDistribution exact_joint(const BinaryChain &chain,
                                   const Rational &cos_ab) {
    if (cos_ab < Rational(-1) || cos_ab > Rational(1)) {
        throw std::invalid_argument("cos_ab must lie in [-1, 1], got " +
                                    cos_ab.str());
    }
    const Rational same = (Rational(1) + cos_ab) * Rational(1, 4);
    const Rational opposite = (Rational(1) - cos_ab) * Rational(1, 4);
    ExactJointDistribution out;
    out.cos_ab = cos_ab;
    if (chain.length() == 0) {
        out.entries[{HalfInteger{0}, HalfInteger{0}}] = Rational(1);
        return out;
    }
    enumerate_joint<Rational>(
        chain, [&](int xy) { return xy > 0 ? same : opposite; },
        [&](HalfInteger alpha, HalfInteger beta, const Rational &w) {
            out.entries[{alpha, beta}] += w;
        });
    return out;
}

double exact_correlation(const BinaryChain &chain, double cos_ab) {
    return exact_joint(chain, cos_ab).correlation();
}

Rational exact_correlation(const BinaryChain &chain, const Rational &cos_ab) {
    return exact_joint(chain, cos_ab).correlation();
}

double singlet_correlation(SpinValue spin, double cos_ab) {
    return -spin.casimir().to_double() / 3.0 * cos_ab;
}

Rational correlation_scale(int dimension) {
    return Rational(static_cast<std::int64_t>(dimension) * dimension - 1, 12);
}

bool RecursionIdentityReport::all_hold() const {
    for (const auto &row : rows) {
        if (!row.holds()) {
            return false;
        }
    }
    return !rows.empty();
}

RecursionIdentityReport verify_recursion_identity(int d_min, int d_max) {
    RecursionIdentityReport report;
    for (int d = std::max(d_min, 2); d <= d_max; ++d) {
        RecursionIdentityRow row;
        row.dimension = d;
        row.rhs = correlation_scale(d);
        if (d % 2 == 0) {
            row.kind = StepKind::HalfInteger;
            const Rational coeff(d, 4);
            row.lhs = coeff * coeff + correlation_scale(d / 2);
        } else {
            row.kind = StepKind::Integer;
            const Rational coeff(d + 1, 4);
            row.lhs = Rational(d - 1, d) *
                      (coeff * coeff + correlation_scale((d - 1) / 2));
        }
        report.rows.push_back(row);
    }
    return report;
}

} // namespace singlet
