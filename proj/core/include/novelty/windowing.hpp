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
#include <span>
#include <vector>

#include "novelty/ingest.hpp"

namespace novelty {

struct WindowConfig {
    /// Number of frame intervals one window covers. Consecutive windows
    /// overlap by (span - 1) / span.
    std::size_t span = 3;
    /// Windows with fewer samples than this are emitted as insufficient.
    std::size_t min_samples = 4;
};

enum class WindowStatus { ok, insufficient };

/// IMU samples assigned to one video frame: every sample with
/// t in [t_start, t_end). `samples` views the mission's storage, so a
/// Window must not outlive the Mission it was chopped from.
struct Window {
    std::size_t frame_index = 0;
    double t_start = 0.0;
    double t_end = 0.0;
    WindowStatus status = WindowStatus::insufficient;
    std::span<const ImuSample> samples;
    double mean_rate = 0.0;
};

/// One window per frame index i >= span, covering [frames[i-span], frames[i]).
/// Returns an empty list when span >= frames.size().
std::vector<Window> chop(const Mission& mission, const WindowConfig& config = {});

/// (count - 1) / (t_last - t_first). Throws insufficient_data for count < 2.
double mean_rate(std::span<const ImuSample> samples);
double mean_rate(std::span<const double> timestamps);

void validate(const WindowConfig& config);

} // namespace novelty
