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

#include <algorithm>
#include <sstream>

#include <gtest/gtest.h>

#include "novelty/pipeline.hpp"
#include "novelty/synth.hpp"
#include "test_support.hpp"

namespace novelty {
namespace {

Mission short_mission(std::uint64_t seed, double duration = 6.0) {
    ScenarioConfig c;
    c.seed = seed;
    c.duration = duration;
    return gen_normal_mission(c);
}

TEST(ExtractFrames, OneEntryPerFrameInOrder) {
    const auto m = short_mission(1);
    const PipelineConfig cfg;
    const auto frames = extract_frames(m, cfg);
    ASSERT_EQ(frames.size(), m.frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        EXPECT_EQ(frames[i].frame_index, i);
        EXPECT_EQ(frames[i].t, m.frames[i]);
        if (i < cfg.window.span) {
            EXPECT_EQ(frames[i].status, ScoreStatus::warmup);
            EXPECT_FALSE(frames[i].features);
        } else {
            EXPECT_EQ(frames[i].status, ScoreStatus::scored);
            ASSERT_TRUE(frames[i].features);
            EXPECT_EQ(frames[i].features->values.size(), 160u);
        }
    }
}

TEST(ExtractFrames, AllWarmupWhenSpanExceedsFrames) {
    auto m = short_mission(2, 1.0);
    m.frames.resize(3);
    const auto frames = extract_frames(m, {{5, 4}, 16});
    for (const auto& f : frames) {
        EXPECT_EQ(f.status, ScoreStatus::warmup);
    }
}

TEST(ScoreMission, EmptyFrameClockGivesHeaderOnlyCsv) {
    auto m = short_mission(3, 1.0);
    const auto model = LofModel::fit(training_matrix(std::vector<Mission>{short_mission(4)}, {}));
    m.frames.clear();
    const auto scores = score_mission(model, m, {});
    EXPECT_TRUE(scores.empty());
    std::ostringstream os;
    write_scores_csv(os, scores);
    EXPECT_EQ(os.str(), std::string(kScoreCsvHeader) + "\n");
}

TEST(ScoreMission, TrainingMissionScoresNearHalf) {
    const std::vector<Mission> train{short_mission(10, 10.0), short_mission(11, 10.0)};
    const PipelineConfig cfg;
    const auto x = training_matrix(train, cfg);
    EXPECT_EQ(x.rows(), 2 * (train[0].frames.size() - cfg.window.span));
    EXPECT_EQ(x.cols(), 160u);
    const auto model = LofModel::fit(x);
    const auto scores = score_mission(model, train[0], cfg);
    std::vector<double> a;
    for (const auto& s : scores) {
        if (s.status == ScoreStatus::scored) {
            a.push_back(s.abnormality);
            EXPECT_EQ(s.abnormality, model.offset() - s.lof);
        }
    }
    std::nth_element(a.begin(), a.begin() + a.size() / 2, a.end());
    EXPECT_NEAR(a[a.size() / 2], 0.5, 0.15);
}

TEST(ScoreMission, DimensionMismatchIsShapeError) {
    const auto model = LofModel::fit(testing::random_matrix(40, 20, 1));
    const auto m = short_mission(5, 2.0);
    EXPECT_EQ(testing::error_code_of([&] { score_mission(model, m, {}); }), ErrorCode::shape);
}

TEST(ScoresCsv, RoundTripAndEmptyCells) {
    std::vector<NoveltyScore> s(3);
    s[0] = {0, 0.0, 0.0, 0.0, false, ScoreStatus::warmup};
    s[1] = {1, 0.25, 1.0, 0.5, false, ScoreStatus::scored};
    s[2] = {2, 0.5, 9.0, -7.5, true, ScoreStatus::scored};
    std::ostringstream os;
    write_scores_csv(os, s);
    EXPECT_NE(os.str().find("0,0,,,warmup"), std::string::npos) << os.str();
    std::istringstream in(os.str());
    const auto back = read_scores_csv(in, 0.4);
    ASSERT_EQ(back.size(), 3u);
    EXPECT_EQ(back[0].status, ScoreStatus::warmup);
    EXPECT_EQ(back[1].lof, 1.0);
    EXPECT_EQ(back[2].abnormality, -7.5);
    EXPECT_TRUE(back[2].flagged);
    EXPECT_FALSE(back[1].flagged);
}

} // namespace
} // namespace novelty
