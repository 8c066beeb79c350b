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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "novelty/ingest.hpp"
#include "novelty/quaternion.hpp"

namespace novelty {

// Synthetic missions for exercising the pipeline: a level vehicle with
// band-limited angular-velocity and acceleration noise, optionally with a
// half-turn flip. This is test scaffolding, not a vehicle dynamics model.

enum class Axis { x, y, z };

inline constexpr double kGravity = 9.81;

/// Half-turn about `axis`: a raised-cosine angular-velocity pulse of peak
/// `peak_rate` and area pi, starting at t0. The pulse lasts 2*pi/peak_rate
/// seconds and must fit inside [t0, t0 + duration].
struct FlipConfig {
    double t0 = 15.0;
    double duration = 1.0;
    double peak_rate = 10.0;
    Axis axis = Axis::x;
};

struct ScenarioConfig {
    std::uint64_t seed = 1;
    double duration = 30.0;
    double imu_rate = 90.0;
    double frame_rate = 30.0;
    double noise_w = 0.05; ///< rad/s, stationary std of each gyro axis
    double noise_a = 0.2;  ///< m/s^2, stationary std of each accelerometer axis
    std::optional<FlipConfig> flip;
};

void validate(const ScenarioConfig& cfg);

/// Length of the raised-cosine pulse, 2*pi / peak_rate.
double flip_pulse_length(const FlipConfig& flip) noexcept;
/// Angular rate of the flip pulse at time t (0 outside the pulse).
double flip_rate(const FlipConfig& flip, double t) noexcept;
/// Integral of flip_rate from t0 to t; pi once the pulse has ended.
double flip_angle(const FlipConfig& flip, double t) noexcept;

Mission gen_normal_mission(const ScenarioConfig& cfg);
Mission gen_flip_mission(const ScenarioConfig& cfg);
/// Dispatches on whether cfg.flip is set.
Mission gen_mission(const ScenarioConfig& cfg);

/// The experiment layout: a set of normal missions and a set of flip
/// missions, each with its own derived seed.
struct SuiteConfig {
    ScenarioConfig scenario{.flip = FlipConfig{}};
    std::size_t normal_missions = 6;
    std::size_t abnormal_missions = 6;
};

struct GeneratedMission {
    std::string name;  ///< e.g. normal_01, abnormal_03
    std::string label; ///< normal | abnormal
    ScenarioConfig config;
    Mission mission;
};

/// Parses `key = value` lines ('#' starts a comment). Keys: seed, duration,
/// imu_rate, frame_rate, noise_w, noise_a, normal_missions,
/// abnormal_missions, flip_t0, flip_duration, flip_peak_rate, flip_axis.
/// Unknown keys and bad values raise ErrorCode::config naming the field.
SuiteConfig parse_suite_config(std::istream& in);

std::vector<GeneratedMission> generate_suite(const SuiteConfig& cfg);

} // namespace novelty
