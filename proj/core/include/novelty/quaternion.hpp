// Copyright 2026 The novelty Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>

namespace novelty {

using Vec3 = std::array<double, 3>;

/// Hamilton quaternion stored in IMU channel order (x, y, z, w).
struct Quat {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double w = 1.0;

    static Quat identity() noexcept { return {}; }
    static Quat from_axis_angle(const Vec3& unit_axis, double angle) noexcept;

    double norm() const noexcept;
    Quat normalized() const noexcept;
    Quat conjugate() const noexcept { return {-x, -y, -z, w}; }

    friend bool operator==(const Quat&, const Quat&) = default;
};

Quat operator*(const Quat& a, const Quat& b) noexcept;

/// Rotates a world-frame vector into the body frame of orientation q.
Vec3 rotate_to_body(const Quat& q, const Vec3& v) noexcept;

/// One first-order kinematics step with body-frame angular velocity:
/// q <- normalize(q + 0.5 * q * (0, w) * dt).
Quat integrate_quat(const Quat& q, const Vec3& w, double dt) noexcept;

} // namespace novelty
