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
 * @file quantum.hpp
 * Quantum-mechanical reference: spin matrices, the two-particle singlet and
 * its measurement statistics for spin observables a.J (x) b.J.
 */
#pragma once

#include <vector>

#include "enumeration.hpp"
#include "geometry.hpp"
#include "hermitian.hpp"
#include "spin.hpp"

namespace singlet {

/**
 * @brief Jx, Jy, Jz in the Jz eigenbasis, hbar = 1.
 *
 * Basis index i holds m = s - i. Built from the ladder elements
 * <m+1|J+|m> = sqrt(s(s+1) - m(m+1)).
 */
struct SpinOperators {
    SpinValue spin;
    CMatrix jx;
    CMatrix jy;
    CMatrix jz;

    /// a.x Jx + a.y Jy + a.z Jz.
    [[nodiscard]] CMatrix component(const Vec3 &a) const;
};

[[nodiscard]] SpinOperators build_spin_operators(SpinValue spin);

struct SingletState {
    SpinValue spin;
    /// Index i_A * d + i_B, with m = s - i on both sides.
    std::vector<Complex> amplitudes;

    [[nodiscard]] Complex amplitude(int twice_m_a, int twice_m_b) const;
    [[nodiscard]] double norm() const;
};

/// sum_m (-1)^(s-m) |m>|-m> / sqrt(2s+1); the (s, -s) amplitude is positive.
[[nodiscard]] SingletState build_singlet(SpinValue spin);

/// Applies (A (x) B) to a two-particle vector.
[[nodiscard]] std::vector<Complex> apply_product(const CMatrix &a,
                                                 const CMatrix &b,
                                                 const std::vector<Complex> &psi);

/**
 * @brief Eigenbasis of a.J with eigenvalues matched to the exact grid
 * s, s-1, ..., -s by nearest value.
 */
struct MeasurementBasis {
    std::vector<HalfInteger> outcomes;
    /// Column j is the eigenvector for outcomes[j].
    CMatrix vectors;
    /// max |computed eigenvalue - grid value|.
    double eigenvalue_error{0.0};
};

/// @throws std::runtime_error if the spectrum does not match the grid.
[[nodiscard]] MeasurementBasis measurement_basis(const SpinOperators &ops,
                                                 const Direction &a);

/// <psi| a.J (x) b.J |psi> by direct contraction.
[[nodiscard]] double quantum_correlation(SpinValue spin, const Direction &a,
                                         const Direction &b);

/// P(alpha, beta) = <psi| Pi_alpha^a (x) Pi_beta^b |psi>.
[[nodiscard]] JointDistribution quantum_joint(SpinValue spin, const Direction &a,
                                              const Direction &b);

/// Half the L1 distance between two joint tables over the union of cells.
[[nodiscard]] double total_variation(const JointDistribution &p,
                                     const JointDistribution &q);

} // namespace singlet
