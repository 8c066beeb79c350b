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
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace novelty {

/// The ten physical IMU channels, in normative file and feature order.
enum class Channel : std::size_t { qx, qy, qz, qw, wx, wy, wz, ax, ay, az };

inline constexpr std::size_t kChannelCount = 10;

inline constexpr std::array<std::string_view, kChannelCount> kChannelNames = {
    "qx", "qy", "qz", "qw", "wx", "wy", "wz", "ax", "ay", "az"};

/// Exact CSV header of an IMU trace.
inline constexpr std::string_view kImuCsvHeader = "t,qx,qy,qz,qw,wx,wy,wz,ax,ay,az";

/// One timestamped reading. Orientation is a unit quaternion (x, y, z, w),
/// angular velocity is in rad/s and linear acceleration in m/s^2.
struct ImuSample {
    double t = 0.0;
    std::array<double, kChannelCount> channels{};

    double operator[](Channel c) const noexcept { return channels[static_cast<std::size_t>(c)]; }
    double& operator[](Channel c) noexcept { return channels[static_cast<std::size_t>(c)]; }

    friend bool operator==(const ImuSample&, const ImuSample&) = default;
};

/// One recorded experiment: an IMU trace plus the video frame clock.
struct Mission {
    std::string id;
    std::vector<ImuSample> samples;
    std::vector<double> frames;
};

struct ValidatedMission {
    Mission mission;
    std::vector<std::string> warnings;
};

// Readers. Row and line numbers in error messages are 1-based and count
// data rows only (the CSV header is not a row).
std::vector<ImuSample> parse_imu(const std::filesystem::path& path);
std::vector<ImuSample> parse_imu_csv(std::istream& in);
std::vector<ImuSample> parse_imu_jsonl(std::istream& in);

std::vector<double> parse_frames(const std::filesystem::path& path);
std::vector<double> parse_frames(std::istream& in);

/// Checks the cross-stream invariants and builds a Mission. A frame clock
/// that runs past either end of the sample span is accepted with a warning;
/// fully disjoint spans raise ErrorCode::coverage.
ValidatedMission validate_mission(std::vector<ImuSample> samples, std::vector<double> frames,
                                  std::string id = {});

/// Reads `<stem>.csv` (or `.jsonl`) together with its sibling frame file.
ValidatedMission load_mission(const std::filesystem::path& imu_path);

/// Frame file that accompanies an IMU trace: `run.csv` -> `run.frames`.
std::filesystem::path frames_path_for(const std::filesystem::path& imu_path);

// Writers use shortest round-trip formatting, so parse(write(x)) == x bit for bit.
void write_imu_csv(std::ostream& out, const std::vector<ImuSample>& samples);
void write_frames(std::ostream& out, const std::vector<double>& frames);
void write_mission(const Mission& mission, const std::filesystem::path& imu_path);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

} // namespace novelty
