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
#include <span>
#include <string>
#include <vector>

#include "novelty/lof.hpp"
#include "novelty/pipeline.hpp"

namespace novelty::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 2,        ///< bad usage, unreadable or malformed input
    kExitInsufficient = 3, ///< not enough windows or training rows
};

/// Fully resolved parameters of one invocation; echoed to run.json.
struct RunConfig {
    std::size_t k = kDefaultNeighbors;
    std::size_t bins = 16;
    std::size_t span = 3;
    std::size_t min_samples = 4;
    double offset = kDefaultOffset;
    double threshold = kDefaultThreshold;
    std::uint64_t seed = 1;
    std::string model;
    std::string out;

    PipelineConfig pipeline() const { return {{span, min_samples}, bins}; }
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// eval

struct LabeledMission {
    std::string label; ///< normal | abnormal
    Mission mission;
};

struct MissionMetrics {
    std::string id;
    std::string label;
    std::size_t frames = 0;
    std::size_t scored = 0;
    std::size_t flagged = 0;
    std::optional<double> min_abnormality;
    std::optional<double> mean_abnormality;
    std::optional<double> max_abnormality;

    double flag_rate() const { return scored == 0 ? 0.0 : static_cast<double>(flagged) / static_cast<double>(scored); }
};

struct EvalReport {
    double threshold = kDefaultThreshold;
    std::vector<MissionMetrics> missions;
    /// Fraction of scored normal frames with abnormality >= threshold.
    std::optional<double> normal_pass;
    /// Fraction of scored abnormal frames with abnormality < threshold.
    std::optional<double> abnormal_catch;
};

EvalReport evaluate(const LofModel& model, std::span<const LabeledMission> missions,
                    const PipelineConfig& config, double threshold);
std::string report_text(const EvalReport& report);
std::string report_json(const EvalReport& report);

// plot

struct PlotSegment {
    std::string label;
    std::vector<NoveltyScore> scores;
};

/// Line chart: abnormality against concatenated frame index, one
/// labeled segment per input, dashed threshold line. Unscored frames break
/// the polyline.
std::string render_svg(std::span<const PlotSegment> segments, double threshold);

// bench

struct BenchReport {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t k = 0;
    std::size_t repetitions = 0;
    double p50_ms = 0.0;
    double p95_ms = 0.0;
    double max_ms = 0.0;
    double budget_ms = 0.0;
    bool within_budget() const { return p95_ms < budget_ms; }
};

/// Synthetic model: n rows of standard-normal features of dimension d.
LofModel synthetic_model(std::size_t n, std::size_t d, std::size_t k, std::uint64_t seed);

/// Times full single-frame scoring (feature extraction of one window plus
/// the LOF query) `repetitions` times. d must equal 10 * bins of the model.
BenchReport run_bench(const LofModel& model, std::size_t repetitions, double budget_ms, std::uint64_t seed);
std::string bench_text(const BenchReport& report);
std::string bench_json(const BenchReport& report);

} // namespace novelty::cli
