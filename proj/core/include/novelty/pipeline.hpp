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
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "novelty/ingest.hpp"
#include "novelty/lof.hpp"
#include "novelty/matrix.hpp"
#include "novelty/spectral.hpp"
#include "novelty/windowing.hpp"

namespace novelty {

struct PipelineConfig {
    WindowConfig window;
    std::size_t bins = 16;

    std::size_t dim() const noexcept { return feature_dim(bins); }
};

/// Feature extraction result for one frame of a mission.
struct FrameFeatures {
    std::size_t frame_index = 0;
    double t = 0.0;
    ScoreStatus status = ScoreStatus::warmup;
    std::optional<FeatureVector> features; ///< set iff status == scored
};

/// One entry per frame, in frame order. Frames before the first full window
/// are warmup; windows with too few samples are insufficient.
std::vector<FrameFeatures> extract_frames(const Mission& mission, const PipelineConfig& config);

/// Stacks the feature vectors of every scorable frame of every mission.
Matrix training_matrix(std::span<const Mission> missions, const PipelineConfig& config);

/// Scores every frame of a mission against a fitted model. Extraction and
/// scoring may run in parallel; the output is always in frame order.
std::vector<NoveltyScore> score_mission(const LofModel& model, const Mission& mission,
                                        const PipelineConfig& config, double threshold = kDefaultThreshold);

/// `frame_index,t,lof,abnormality,status`; lof and abnormality are empty for
/// unscored frames.
inline constexpr std::string_view kScoreCsvHeader = "frame_index,t,lof,abnormality,status";

void write_scores_csv(std::ostream& out, std::span<const NoveltyScore> scores);
std::vector<NoveltyScore> read_scores_csv(std::istream& in, double threshold = kDefaultThreshold);

} // namespace novelty
