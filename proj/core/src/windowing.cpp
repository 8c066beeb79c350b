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

#include "novelty/windowing.hpp"

#include <algorithm>

#include "novelty/error.hpp"

namespace novelty {

void validate(const WindowConfig& config) {
    if (config.span < 1) {
        throw Error(ErrorCode::config, "span must be >= 1");
    }
    if (config.min_samples < 2) {
        throw Error(ErrorCode::config, "min_samples must be >= 2");
    }
}

double mean_rate(std::span<const double> timestamps) {
    if (timestamps.size() < 2) {
        throw Error(ErrorCode::insufficient_data, "mean sampling rate needs at least 2 samples");
    }
    const double extent = timestamps.back() - timestamps.front();
    if (!(extent > 0.0)) {
        throw Error(ErrorCode::ordering, "timestamps must be strictly increasing");
    }
    return static_cast<double>(timestamps.size() - 1) / extent;
}

double mean_rate(std::span<const ImuSample> samples) {
    if (samples.size() < 2) {
        throw Error(ErrorCode::insufficient_data, "mean sampling rate needs at least 2 samples");
    }
    const double extent = samples.back().t - samples.front().t;
    if (!(extent > 0.0)) {
        throw Error(ErrorCode::ordering, "timestamps must be strictly increasing");
    }
    return static_cast<double>(samples.size() - 1) / extent;
}

std::vector<Window> chop(const Mission& mission, const WindowConfig& config) {
    validate(config);
    const auto& frames = mission.frames;
    const std::span<const ImuSample> all(mission.samples);
    std::vector<Window> windows;
    if (config.span >= frames.size()) {
        return windows;
    }
    windows.reserve(frames.size() - config.span);

    auto first_at_or_after = [&](double t) {
        return std::lower_bound(all.begin(), all.end(), t,
                                [](const ImuSample& s, double v) { return s.t < v; });
    };

    for (std::size_t i = config.span; i < frames.size(); ++i) {
        Window w;
        w.frame_index = i;
        w.t_start = frames[i - config.span];
        w.t_end = frames[i];
        const auto lo = first_at_or_after(w.t_start);
        const auto hi = first_at_or_after(w.t_end);
        const auto count = static_cast<std::size_t>(hi - lo);
        if (count >= config.min_samples) {
            w.status = WindowStatus::ok;
            w.samples = all.subspan(static_cast<std::size_t>(lo - all.begin()), count);
            w.mean_rate = mean_rate(w.samples);
        }
        windows.push_back(w);
    }
    return windows;
}

} // namespace novelty
