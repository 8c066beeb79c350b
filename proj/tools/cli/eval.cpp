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
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "cli/cli.hpp"

namespace novelty::cli {

EvalReport evaluate(const LofModel& model, std::span<const LabeledMission> missions,
                    const PipelineConfig& config, double threshold) {
    EvalReport report;
    report.threshold = threshold;
    std::size_t normal_total = 0;
    std::size_t normal_ok = 0;
    std::size_t abnormal_total = 0;
    std::size_t abnormal_hit = 0;

    for (const auto& lm : missions) {
        const auto scores = score_mission(model, lm.mission, config, threshold);
        MissionMetrics m;
        m.id = lm.mission.id;
        m.label = lm.label;
        m.frames = scores.size();
        double sum = 0.0;
        for (const auto& s : scores) {
            if (s.status != ScoreStatus::scored) {
                continue;
            }
            ++m.scored;
            m.flagged += s.flagged ? 1 : 0;
            sum += s.abnormality;
            m.min_abnormality = std::min(m.min_abnormality.value_or(s.abnormality), s.abnormality);
            m.max_abnormality = std::max(m.max_abnormality.value_or(s.abnormality), s.abnormality);
        }
        if (m.scored > 0) {
            m.mean_abnormality = sum / static_cast<double>(m.scored);
        }
        if (lm.label == "normal") {
            normal_total += m.scored;
            normal_ok += m.scored - m.flagged;
        } else {
            abnormal_total += m.scored;
            abnormal_hit += m.flagged;
        }
        report.missions.push_back(std::move(m));
    }
    if (normal_total > 0) {
        report.normal_pass = static_cast<double>(normal_ok) / static_cast<double>(normal_total);
    }
    if (abnormal_total > 0) {
        report.abnormal_catch = static_cast<double>(abnormal_hit) / static_cast<double>(abnormal_total);
    }
    return report;
}

std::string report_text(const EvalReport& report) {
    std::ostringstream os;
    auto opt = [](const std::optional<double>& v) {
        std::ostringstream s;
        if (v) {
            s << std::fixed << std::setprecision(4) << *v;
        } else {
            s << "n/a";
        }
        return s.str();
    };
    os << "threshold: " << report.threshold << '\n';
    os << std::left << std::setw(16) << "mission" << std::setw(10) << "label" << std::right << std::setw(8)
       << "frames" << std::setw(8) << "scored" << std::setw(10) << "flag_rate" << std::setw(16) << "min"
       << std::setw(16) << "mean" << std::setw(16) << "max" << '\n';
    for (const auto& m : report.missions) {
        os << std::left << std::setw(16) << m.id << std::setw(10) << m.label << std::right << std::setw(8)
           << m.frames << std::setw(8) << m.scored << std::setw(10) << std::fixed << std::setprecision(4)
           << m.flag_rate() << std::setw(16) << opt(m.min_abnormality) << std::setw(16)
           << opt(m.mean_abnormality) << std::setw(16) << opt(m.max_abnormality) << '\n';
        os.unsetf(std::ios::fixed);
    }
    os << "normal_pass: " << opt(report.normal_pass) << '\n';
    os << "abnormal_catch: " << opt(report.abnormal_catch) << '\n';
    return os.str();
}

std::string report_json(const EvalReport& report) {
    using nlohmann::ordered_json;
    auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
    ordered_json j;
    j["threshold"] = report.threshold;
    j["normal_pass"] = opt(report.normal_pass);
    j["abnormal_catch"] = opt(report.abnormal_catch);
    j["missions"] = ordered_json::array();
    for (const auto& m : report.missions) {
        j["missions"].push_back({{"id", m.id},
                                 {"label", m.label},
                                 {"frames", m.frames},
                                 {"scored", m.scored},
                                 {"flagged", m.flagged},
                                 {"flag_rate", m.flag_rate()},
                                 {"min_abnormality", opt(m.min_abnormality)},
                                 {"mean_abnormality", opt(m.mean_abnormality)},
                                 {"max_abnormality", opt(m.max_abnormality)}});
    }
    return j.dump(2) + "\n";
}

} // namespace novelty::cli
