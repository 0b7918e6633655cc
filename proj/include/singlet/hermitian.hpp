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
 * @file hermitian.hpp
 * Dense complex matrices and a cyclic Jacobi eigensolver for Hermitian
 * input.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace singlet {

using Complex = std::complex<double>;

/// Row-major square complex matrix; std::complex keeps re/im interleaved.
class CMatrix {
  public:
    CMatrix() = default;
    explicit CMatrix(std::size_t n) : n_{n}, data_(n * n) {}

    static CMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t size() const { return n_; }
    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    [[nodiscard]] const Complex &operator()(std::size_t r, std::size_t c) const {
        return data_[r * n_ + c];
    }

    [[nodiscard]] CMatrix adjoint() const;
    [[nodiscard]] Complex trace() const;
    /// max |A(i,j) - conj(A(j,i))|.
    [[nodiscard]] double hermiticity_error() const;
    /// max_ij |A(i,j) - B(i,j)|.
    [[nodiscard]] double max_abs_diff(const CMatrix &other) const;

    friend CMatrix operator*(const CMatrix &a, const CMatrix &b);
    friend CMatrix operator+(const CMatrix &a, const CMatrix &b);
    friend CMatrix operator-(const CMatrix &a, const CMatrix &b);
    friend CMatrix operator*(Complex k, const CMatrix &a);

  private:
    std::size_t n_{0};
    std::vector<Complex> data_;
};

struct EigenDecomposition {
    /// Ascending.
    std::vector<double> values;
    /// Column j is the eigenvector for values[j].
    CMatrix vectors;
    int sweeps{0};
};

/**
 * @brief Eigen-decompose a Hermitian matrix by cyclic complex Jacobi
 * rotations.
 *
 * Each rotation factors the off-diagonal phase out of the (p, q) block,
 * applies a real Jacobi rotation to the resulting real symmetric 2x2 block and
 * folds the phase into the eigenvector basis.
 *
 * @throws std::runtime_error if the off-diagonal norm does not fall below
 * tolerance within the sweep limit.
 */
[[nodiscard]] EigenDecomposition eigh(const CMatrix &hermitian,
                                      double tolerance = 1e-14,
                                      int max_sweeps = 100);

} // namespace singlet
