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
#include "singlet/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace singlet {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = 1.0;
    }
    return out;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

Complex CMatrix::trace() const {
    Complex t{};
    for (std::size_t i = 0; i < n_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double CMatrix::hermiticity_error() const {
    double err = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            err = std::max(err, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return err;
}

double CMatrix::max_abs_diff(const CMatrix &other) const {
    if (other.n_ != n_) {
        throw std::invalid_argument("CMatrix: size mismatch");
    }
    double err = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k) {
        err = std::max(err, std::abs(data_[k] - other.data_[k]));
    }
    return err;
}

CMatrix operator*(const CMatrix &a, const CMatrix &b) {
    if (a.n_ != b.n_) {
        throw std::invalid_argument("CMatrix: size mismatch");
    }
    const std::size_t n = a.n_;
    CMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

CMatrix operator+(const CMatrix &a, const CMatrix &b) {
    CMatrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) {
        out.data_[k] += b.data_[k];
    }
    return out;
}

CMatrix operator-(const CMatrix &a, const CMatrix &b) {
    return a + Complex{-1.0} * b;
}

CMatrix operator*(Complex k, const CMatrix &a) {
    CMatrix out = a;
    for (auto &v : out.data_) {
        v *= k;
    }
    return out;
}

EigenDecomposition eigh(const CMatrix &hermitian, double tolerance,
                        int max_sweeps) {
    const std::size_t n = hermitian.size();
    if (hermitian.hermiticity_error() > 1e-10) {
        throw std::invalid_argument("eigh: matrix is not Hermitian");
    }
    CMatrix a = hermitian;
    CMatrix w = CMatrix::identity(n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            scale += std::norm(a(i, j));
        }
    }
    const double threshold = tolerance * tolerance * std::max(scale, 1e-300);

    auto off_norm = [&] {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += std::norm(a(p, q));
            }
        }
        return off;
    };

    int sweep = 0;
    for (; sweep < max_sweeps && off_norm() > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) {
                    continue;
                }
                const Complex phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // V = diag(1, conj(phase)) * [[c, s], [-s, c]] on (p, q).
                const Complex vpp = c;
                const Complex vpq = s;
                const Complex vqp = -s * std::conj(phase);
                const Complex vqq = c * std::conj(phase);

                for (std::size_t i = 0; i < n; ++i) {
                    const Complex aip = a(i, p);
                    const Complex aiq = a(i, q);
                    a(i, p) = aip * vpp + aiq * vqp;
                    a(i, q) = aip * vpq + aiq * vqq;
                    const Complex wip = w(i, p);
                    const Complex wiq = w(i, q);
                    w(i, p) = wip * vpp + wiq * vqp;
                    w(i, q) = wip * vpq + wiq * vqq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex apj = a(p, j);
                    const Complex aqj = a(q, j);
                    a(p, j) = std::conj(vpp) * apj + std::conj(vqp) * aqj;
                    a(q, j) = std::conj(vpq) * apj + std::conj(vqq) * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    if (off_norm() > threshold) {
        throw std::runtime_error("eigh: Jacobi iteration did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        return a(l, l).real() < a(r, r).real();
    });
    EigenDecomposition out;
    out.sweeps = sweep;
    out.vectors = CMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values.push_back(a(order[j], order[j]).real());
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, j) = w(i, order[j]);
        }
    }
    return out;
}

} // namespace singlet
