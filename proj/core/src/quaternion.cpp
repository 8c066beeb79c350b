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

#include "novelty/quaternion.hpp"

#include <cmath>

namespace novelty {

Quat Quat::from_axis_angle(const Vec3& unit_axis, double angle) noexcept {
    const double s = std::sin(angle / 2.0);
    return {unit_axis[0] * s, unit_axis[1] * s, unit_axis[2] * s, std::cos(angle / 2.0)};
}

double Quat::norm() const noexcept { return std::sqrt(x * x + y * y + z * z + w * w); }

Quat Quat::normalized() const noexcept {
    const double n = norm();
    return {x / n, y / n, z / n, w / n};
}

Quat operator*(const Quat& a, const Quat& b) noexcept {
    return {
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
    };
}

Vec3 rotate_to_body(const Quat& q, const Vec3& v) noexcept {
    const Quat p{v[0], v[1], v[2], 0.0};
    const Quat r = q.conjugate() * p * q;
    return {r.x, r.y, r.z};
}

Quat integrate_quat(const Quat& q, const Vec3& w, double dt) noexcept {
    const Quat dq = q * Quat{w[0], w[1], w[2], 0.0};
    const double h = 0.5 * dt;
    return Quat{q.x + h * dq.x, q.y + h * dq.y, q.z + h * dq.z, q.w + h * dq.w}.normalized();
}

} // namespace novelty
