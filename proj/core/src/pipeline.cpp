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

#include "novelty/pipeline.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "novelty/error.hpp"
#include "parallel.hpp"

namespace novelty {

std::vector<FrameFeatures> extract_frames(const Mission& mission, const PipelineConfig& config) {
    if (config.bins < 1) {
        throw Error(ErrorCode::config, "bins must be >= 1");
    }
    validate(config.window);
    std::vector<FrameFeatures> frames(mission.frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        frames[i].frame_index = i;
        frames[i].t = mission.frames[i];
    }
    const auto windows = chop(mission, config.window);
    detail::parallel_for(windows.size(), [&](std::size_t w) {
        const auto& win = windows[w];
        auto& slot = frames[win.frame_index];
        slot.features = feature_vector(win, config.bins);
        slot.status = slot.features ? ScoreStatus::scored : ScoreStatus::insufficient;
    }, 16);
    return frames;
}

Matrix training_matrix(std::span<const Mission> missions, const PipelineConfig& config) {
    Matrix x(0, config.dim());
    for (const auto& m : missions) {
        for (const auto& f : extract_frames(m, config)) {
            if (f.features) {
                x.append_row(f.features->values);
            }
        }
    }
    return x;
}

std::vector<NoveltyScore> score_mission(const LofModel& model, const Mission& mission,
                                        const PipelineConfig& config, double threshold) {
    if (config.dim() != model.dim()) {
        throw Error(ErrorCode::shape, "pipeline produces " + std::to_string(config.dim()) +
                                          "-dimensional features, model expects " + std::to_string(model.dim()));
    }
    const auto frames = extract_frames(mission, config);
    std::vector<NoveltyScore> scores(frames.size());
    detail::parallel_for(frames.size(), [&](std::size_t i) {
        const auto& f = frames[i];
        NoveltyScore s;
        if (f.features) {
            s = model.score(f.features->values, threshold, f.frame_index);
        } else {
            s.frame_index = f.frame_index;
            s.status = f.status;
        }
        s.t = f.t;
        scores[i] = s;
    }, 16);
    return scores;
}

void write_scores_csv(std::ostream& out, std::span<const NoveltyScore> scores) {
    out << kScoreCsvHeader << '\n';
    for (const auto& s : scores) {
        out << s.frame_index << ',' << format_double(s.t) << ',';
        if (s.status == ScoreStatus::scored) {
            out << format_double(s.lof) << ',' << format_double(s.abnormality);
        } else {
            out << ',';
        }
        out << ',' << to_string(s.status) << '\n';
    }
}

std::vector<NoveltyScore> read_scores_csv(std::istream& in, double threshold) {
    std::string line;
    if (!std::getline(in, line) || line != kScoreCsvHeader) {
        throw Error(ErrorCode::format, "score CSV header must be '" + std::string(kScoreCsvHeader) + "'");
    }
    std::vector<NoveltyScore> scores;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        std::vector<std::string_view> fields;
        std::string_view rest = line;
        for (;;) {
            const auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        auto bad = [&](const std::string& what) {
            return Error(ErrorCode::format, "score CSV row " + std::to_string(row) + ": " + what);
        };
        if (fields.size() != 5) {
            throw bad("expected 5 columns");
        }
        auto number = [&](std::string_view f, auto& dst) {
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), dst);
            if (ec != std::errc() || ptr != f.data() + f.size()) {
                throw bad("cannot parse '" + std::string(f) + "'");
            }
        };
        NoveltyScore s;
        number(fields[0], s.frame_index);
        number(fields[1], s.t);
        if (fields[4] == "scored") {
            s.status = ScoreStatus::scored;
            number(fields[2], s.lof);
            number(fields[3], s.abnormality);
            s.flagged = is_flagged(s.abnormality, threshold);
        } else if (fields[4] == "warmup") {
            s.status = ScoreStatus::warmup;
        } else if (fields[4] == "insufficient") {
            s.status = ScoreStatus::insufficient;
        } else {
            throw bad("unknown status '" + std::string(fields[4]) + "'");
        }
        scores.push_back(s);
    }
    return scores;
}

} // namespace novelty
