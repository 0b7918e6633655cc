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
#include "singlet/quantum.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace singlet {

CMatrix SpinOperators::component(const Vec3 &a) const {
    return Complex{a.x} * jx + Complex{a.y} * jy + Complex{a.z} * jz;
}

SpinOperators build_spin_operators(SpinValue spin) {
    const auto d = static_cast<std::size_t>(spin.dimension());
    const double s = spin.value();
    SpinOperators ops{spin, CMatrix(d), CMatrix(d), CMatrix(d)};
    for (std::size_t i = 0; i < d; ++i) {
        const double m = s - static_cast<double>(i);
        ops.jz(i, i) = m;
        if (i + 1 < d) {
            // J+ raises |m - 1> (index i + 1) to |m> (index i).
            const double mm = m - 1.0;
            const double ladder = std::sqrt(s * (s + 1.0) - mm * (mm + 1.0));
            ops.jx(i, i + 1) = 0.5 * ladder;
            ops.jx(i + 1, i) = 0.5 * ladder;
            ops.jy(i, i + 1) = Complex{0.0, -0.5 * ladder};
            ops.jy(i + 1, i) = Complex{0.0, 0.5 * ladder};
        }
    }
    return ops;
}

Complex SingletState::amplitude(int twice_m_a, int twice_m_b) const {
    const int d = spin.dimension();
    const int ia = (spin.twice_s() - twice_m_a) / 2;
    const int ib = (spin.twice_s() - twice_m_b) / 2;
    if (ia < 0 || ia >= d || ib < 0 || ib >= d) {
        throw std::out_of_range("SingletState: m outside [-s, s]");
    }
    return amplitudes[static_cast<std::size_t>(ia * d + ib)];
}

double SingletState::norm() const {
    double n = 0.0;
    for (const auto &c : amplitudes) {
        n += std::norm(c);
    }
    return std::sqrt(n);
}

SingletState build_singlet(SpinValue spin) {
    const auto d = static_cast<std::size_t>(spin.dimension());
    SingletState psi{spin, std::vector<Complex>(d * d)};
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t ia = 0; ia < d; ++ia) {
        // m_A = s - ia, so s - m_A = ia; partner m_B = -m_A sits at d-1-ia.
        const double sign = ia % 2 == 0 ? 1.0 : -1.0;
        psi.amplitudes[ia * d + (d - 1 - ia)] = sign * amp;
    }
    return psi;
}

std::vector<Complex> apply_product(const CMatrix &a, const CMatrix &b,
                                   const std::vector<Complex> &psi) {
    const std::size_t d = a.size();
    std::vector<Complex> out(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < d; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) {
                    continue;
                }
                for (std::size_t l = 0; l < d; ++l) {
                    acc += aik * b(j, l) * psi[k * d + l];
                }
            }
            out[i * d + j] = acc;
        }
    }
    return out;
}

MeasurementBasis measurement_basis(const SpinOperators &ops,
                                   const Direction &a) {
    const auto eig = eigh(ops.component(a.vec()));
    const int twice_s = ops.spin.twice_s();
    const std::size_t d = eig.values.size();
    MeasurementBasis out;
    out.vectors = CMatrix(d);
    out.outcomes.resize(d);
    std::set<int> used;
    for (std::size_t j = 0; j < d; ++j) {
        // Nearest grid point m with 2m = twice_s - 2i.
        const double v = eig.values[j];
        const auto i = static_cast<int>(std::lround((0.5 * twice_s) - v));
        if (i < 0 || i > twice_s || !used.insert(i).second) {
            throw std::runtime_error("eigenvalue " + std::to_string(v) +
                                     " does not match the spin grid");
        }
        const HalfInteger grid{twice_s - 2 * i};
        out.eigenvalue_error =
            std::max(out.eigenvalue_error, std::abs(v - grid.to_double()));
        const auto col = static_cast<std::size_t>(i);
        out.outcomes[col] = grid;
        for (std::size_t r = 0; r < d; ++r) {
            out.vectors(r, col) = eig.vectors(r, j);
        }
    }
    if (out.eigenvalue_error > 1e-9) {
        throw std::runtime_error("spectrum of a.J deviates from the spin grid by " +
                                 std::to_string(out.eigenvalue_error));
    }
    return out;
}

double quantum_correlation(SpinValue spin, const Direction &a,
                           const Direction &b) {
    const auto ops = build_spin_operators(spin);
    const auto psi = build_singlet(spin);
    const auto phi =
        apply_product(ops.component(a.vec()), ops.component(b.vec()), psi.amplitudes);
    Complex acc{};
    for (std::size_t k = 0; k < phi.size(); ++k) {
        acc += std::conj(psi.amplitudes[k]) * phi[k];
    }
    return acc.real();
}

JointDistribution quantum_joint(SpinValue spin, const Direction &a,
                                const Direction &b) {
    const auto ops = build_spin_operators(spin);
    const auto psi = build_singlet(spin);
    const auto basis_a = measurement_basis(ops, a);
    const auto basis_b = measurement_basis(ops, b);
    const std::size_t d = static_cast<std::size_t>(spin.dimension());
    JointDistribution out;
    out.cos_ab = a.dot(b);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            // <u_i (x) v_j | psi>; psi is supported on (k, d-1-k).
            Complex amp{};
            for (std::size_t k = 0; k < d; ++k) {
                const std::size_t l = d - 1 - k;
                amp += std::conj(basis_a.vectors(k, i)) *
                       std::conj(basis_b.vectors(l, j)) * psi.amplitudes[k * d + l];
            }
            out.entries[{basis_a.outcomes[i], basis_b.outcomes[j]}] = std::norm(amp);
        }
    }
    return out;
}

double total_variation(const JointDistribution &p, const JointDistribution &q) {
    std::set<OutcomePair> keys;
    for (const auto &[k, v] : p.entries) {
        keys.insert(k);
    }
    for (const auto &[k, v] : q.entries) {
        keys.insert(k);
    }
    double l1 = 0.0;
    for (const auto &k : keys) {
        l1 += std::abs(p.probability(k.first, k.second) -
                       q.probability(k.first, k.second));
    }
    return 0.5 * l1;
}

} // namespace singlet
