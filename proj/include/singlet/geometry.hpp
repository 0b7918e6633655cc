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
 * @file geometry.hpp
 * Vectors, unit directions and rotations in R^3.
 */
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace singlet {

struct Vec3 {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    [[nodiscard]] constexpr double dot(const Vec3 &o) const {
        return x * o.x + y * o.y + z * o.z;
    }
    [[nodiscard]] double norm() const { return std::sqrt(dot(*this)); }

    friend constexpr Vec3 operator+(const Vec3 &a, const Vec3 &b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend constexpr Vec3 operator-(const Vec3 &a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr Vec3 operator*(double k, const Vec3 &a) {
        return {k * a.x, k * a.y, k * a.z};
    }
    friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

/// A point on the unit sphere; |x^2 + y^2 + z^2 - 1| <= 1e-9.
class Direction {
  public:
    static constexpr double kUnitTolerance = 1e-9;
    static constexpr double kIngestTolerance = 1e-6;

    /// (0, 0, 1).
    constexpr Direction() = default;

    /**
     * @brief Accept @p v if its norm is within @p tolerance of 1 and rescale
     * it to unit length; otherwise throw std::invalid_argument.
     */
    static Direction normalized(const Vec3 &v,
                                double tolerance = kIngestTolerance) {
        const double n = v.norm();
        if (!std::isfinite(n) || std::abs(n - 1.0) > tolerance) {
            throw std::invalid_argument("direction is not a unit vector (norm " +
                                        std::to_string(n) + ")");
        }
        return Direction{(1.0 / n) * v};
    }

    /// Polar angle theta from +z, azimuth phi from +x.
    static Direction from_spherical(double theta, double phi) {
        const double st = std::sin(theta);
        return Direction{{st * std::cos(phi), st * std::sin(phi), std::cos(theta)}};
    }

    /// For components that are unit length by construction.
    static constexpr Direction from_unit(const Vec3 &v) { return Direction{v}; }

    static constexpr Direction x_axis() { return Direction{{1.0, 0.0, 0.0}}; }
    static constexpr Direction y_axis() { return Direction{{0.0, 1.0, 0.0}}; }
    static constexpr Direction z_axis() { return Direction{{0.0, 0.0, 1.0}}; }

    [[nodiscard]] constexpr const Vec3 &vec() const { return v_; }
    [[nodiscard]] constexpr double x() const { return v_.x; }
    [[nodiscard]] constexpr double y() const { return v_.y; }
    [[nodiscard]] constexpr double z() const { return v_.z; }
    [[nodiscard]] constexpr double dot(const Vec3 &o) const { return v_.dot(o); }
    [[nodiscard]] constexpr double dot(const Direction &o) const {
        return v_.dot(o.v_);
    }

    constexpr Direction operator-() const { return Direction{-v_}; }
    friend constexpr bool operator==(const Direction &,
                                     const Direction &) = default;

  private:
    explicit constexpr Direction(const Vec3 &v) : v_{v} {}
    Vec3 v_{0.0, 0.0, 1.0};
};

/// Row-major 3x3 matrix.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    [[nodiscard]] constexpr double operator()(int r, int c) const {
        return m[static_cast<std::size_t>(3 * r + c)];
    }
    [[nodiscard]] constexpr Vec3 apply(const Vec3 &v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    [[nodiscard]] constexpr double determinant() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) -
               m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }
    /// max |R^T R - I| entry and |det R - 1| are both within @p tol.
    [[nodiscard]] bool is_rotation(double tol = 1e-9) const {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double acc = 0.0;
                for (int k = 0; k < 3; ++k) {
                    acc += (*this)(k, i) * (*this)(k, j);
                }
                if (std::abs(acc - (i == j ? 1.0 : 0.0)) > tol) {
                    return false;
                }
            }
        }
        return std::abs(determinant() - 1.0) <= tol;
    }

    static Mat3 identity() { return {}; }
    /// Rotation by @p angle about @p axis (Rodrigues).
    static Mat3 axis_angle(const Direction &axis, double angle) {
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        const double t = 1.0 - c;
        const double x = axis.x();
        const double y = axis.y();
        const double z = axis.z();
        return Mat3{{t * x * x + c, t * x * y - s * z, t * x * z + s * y,
                     t * x * y + s * z, t * y * y + c, t * y * z - s * x,
                     t * x * z - s * y, t * y * z + s * x, t * z * z + c}};
    }
};

} // namespace singlet
