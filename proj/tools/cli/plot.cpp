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
#include <cmath>
#include <sstream>

#include "cli/cli.hpp"
#include "novelty/error.hpp"
#include "novelty/version.hpp"

namespace novelty::cli {
namespace {

constexpr double kWidth = 1000.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string num(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << v;
    return os.str();
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_svg(std::span<const PlotSegment> segments, double threshold) {
    std::size_t total = 0;
    double lo = threshold;
    double hi = threshold;
    for (const auto& seg : segments) {
        total += seg.scores.size();
        for (const auto& s : seg.scores) {
            if (s.status == ScoreStatus::scored) {
                lo = std::min(lo, s.abnormality);
                hi = std::max(hi, s.abnormality);
            }
        }
    }
    if (total == 0) {
        throw Error(ErrorCode::insufficient_data, "nothing to plot");
    }
    const double pad = std::max(0.05 * (hi - lo), 0.1);
    lo -= pad;
    hi += pad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const double xscale = total > 1 ? plot_w / static_cast<double>(total - 1) : 0.0;
    auto x_of = [&](std::size_t i) { return kLeft + static_cast<double>(i) * xscale; };
    auto y_of = [&](double v) { return kTop + (hi - v) / (hi - lo) * plot_h; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<!-- generated by novelty plot " << kVersion << " -->\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    os << "<rect class=\"frame\" x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << num(plot_w)
       << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">Abnormality measure</text>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
       << "\" text-anchor=\"middle\" font-size=\"12\">frame</text>\n";

    for (int tick = 0; tick <= 4; ++tick) {
        const double v = lo + (hi - lo) * tick / 4.0;
        os << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(y_of(v) + 4)
           << "\" text-anchor=\"end\" font-size=\"10\">" << num(v) << "</text>\n";
    }

    const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
    std::size_t base = 0;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const auto& seg = segments[s];
        const char* color = palette[s % std::size(palette)];
        if (s > 0) {
            os << "<line class=\"segment-boundary\" x1=\"" << num(x_of(base)) << "\" y1=\"" << kTop << "\" x2=\""
               << num(x_of(base)) << "\" y2=\"" << kTop + plot_h << "\" stroke=\"#999\"/>\n";
        }
        const std::size_t mid = base + seg.scores.size() / 2;
        os << "<text class=\"segment-label\" x=\"" << num(x_of(std::min(mid, total - 1))) << "\" y=\""
           << kTop + plot_h + 16 << "\" text-anchor=\"middle\" font-size=\"11\">" << escape(seg.label)
           << "</text>\n";

        // One polyline per run of consecutive scored frames.
        std::ostringstream run;
        std::size_t run_len = 0;
        auto flush = [&] {
            if (run_len > 0) {
                os << "<polyline class=\"trace\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\""
                   << run.str() << "\"/>\n";
            }
            run.str({});
            run_len = 0;
        };
        for (std::size_t i = 0; i < seg.scores.size(); ++i) {
            const auto& sc = seg.scores[i];
            if (sc.status != ScoreStatus::scored) {
                flush();
                continue;
            }
            run << (run_len ? " " : "") << num(x_of(base + i)) << ',' << num(y_of(sc.abnormality));
            ++run_len;
        }
        flush();
        base += seg.scores.size();
    }

    os << "<line class=\"threshold\" x1=\"" << kLeft << "\" y1=\"" << num(y_of(threshold)) << "\" x2=\""
       << kLeft + plot_w << "\" y2=\"" << num(y_of(threshold))
       << "\" stroke=\"red\" stroke-dasharray=\"6,4\"/>\n";
    os << "<text x=\"" << kLeft + plot_w - 4 << "\" y=\"" << num(y_of(threshold) - 4)
       << "\" text-anchor=\"end\" font-size=\"10\" fill=\"red\">threshold " << threshold << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace novelty::cli
