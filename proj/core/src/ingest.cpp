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

#include "novelty/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "novelty/error.hpp"

namespace novelty {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool parse_number(std::string_view text, double& out) {
    text = trim(text);
    if (text.empty()) {
        return false;
    }
    if (text.front() == '+') {
        text.remove_prefix(1);
    }
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

std::string where(std::size_t row, std::string_view column) {
    std::ostringstream os;
    os << "row " << row << ", column " << column;
    return os.str();
}

void check_order(const std::vector<ImuSample>& samples, std::size_t row) {
    if (samples.size() >= 2 && !(samples.back().t > samples[samples.size() - 2].t)) {
        throw Error(ErrorCode::ordering,
                    "timestamp not strictly increasing at row " + std::to_string(row));
    }
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io, "cannot open " + path.string());
    }
    return in;
}

} // namespace

std::vector<ImuSample> parse_imu_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::format, "missing header, expected '" + std::string(kImuCsvHeader) + "'");
    }
    if (trim(line) != kImuCsvHeader) {
        throw Error(ErrorCode::format, "header must be exactly '" + std::string(kImuCsvHeader) +
                                           "', got '" + std::string(trim(line)) + "'");
    }

    std::vector<ImuSample> samples;
    std::size_t row = 0;
    std::vector<std::string_view> fields;
    while (std::getline(in, line)) {
        ++row;
        fields.clear();
        std::string_view rest = line;
        for (;;) {
            auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != kChannelCount + 1) {
            throw Error(ErrorCode::format, "row " + std::to_string(row) + ": expected " +
                                               std::to_string(kChannelCount + 1) + " columns, got " +
                                               std::to_string(fields.size()));
        }

        ImuSample s;
        for (std::size_t col = 0; col < fields.size(); ++col) {
            const std::string_view name = col == 0 ? std::string_view("t") : kChannelNames[col - 1];
            double v = 0.0;
            if (!parse_number(fields[col], v)) {
                throw Error(ErrorCode::format, where(row, name) + ": cannot parse '" +
                                                   std::string(trim(fields[col])) + "'");
            }
            if (!std::isfinite(v)) {
                throw Error(ErrorCode::value, where(row, name) + ": non-finite value");
            }
            (col == 0 ? s.t : s.channels[col - 1]) = v;
        }
        samples.push_back(s);
        check_order(samples, row);
    }
    return samples;
}

std::vector<ImuSample> parse_imu_jsonl(std::istream& in) {
    std::vector<ImuSample> samples;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorCode::format, "row " + std::to_string(row) + ": " + e.what());
        }
        if (!obj.is_object() || obj.size() != kChannelCount + 1) {
            throw Error(ErrorCode::format, "row " + std::to_string(row) + ": expected an object with keys " +
                                               std::string(kImuCsvHeader));
        }
        ImuSample s;
        auto read = [&](std::string_view key, double& dst) {
            auto it = obj.find(key);
            if (it == obj.end()) {
                throw Error(ErrorCode::format, "row " + std::to_string(row) + ": missing key " + std::string(key));
            }
            if (!it->is_number()) {
                throw Error(ErrorCode::value, where(row, key) + ": not a number");
            }
            dst = it->get<double>();
            if (!std::isfinite(dst)) {
                throw Error(ErrorCode::value, where(row, key) + ": non-finite value");
            }
        };
        read("t", s.t);
        for (std::size_t c = 0; c < kChannelCount; ++c) {
            read(kChannelNames[c], s.channels[c]);
        }
        samples.push_back(s);
        check_order(samples, row);
    }
    return samples;
}

std::vector<ImuSample> parse_imu(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    try {
        if (path.extension() == ".jsonl") {
            return parse_imu_jsonl(in);
        }
        return parse_imu_csv(in);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.detail());
    }
}

std::vector<double> parse_frames(std::istream& in) {
    std::vector<double> frames;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        double v = 0.0;
        if (!parse_number(line, v)) {
            throw Error(ErrorCode::format, "line " + std::to_string(line_no) + ": cannot parse '" +
                                               std::string(trim(line)) + "'");
        }
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::value, "line " + std::to_string(line_no) + ": non-finite value");
        }
        if (!frames.empty() && !(v > frames.back())) {
            throw Error(ErrorCode::ordering,
                        "frame timestamp not strictly increasing at line " + std::to_string(line_no));
        }
        frames.push_back(v);
    }
    if (frames.size() < 2) {
        throw Error(ErrorCode::format, "frame file must contain at least 2 frames");
    }
    return frames;
}

std::vector<double> parse_frames(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    try {
        return parse_frames(in);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.detail());
    }
}

ValidatedMission validate_mission(std::vector<ImuSample> samples, std::vector<double> frames, std::string id) {
    if (samples.size() < 2) {
        throw Error(ErrorCode::insufficient_data, "mission needs at least 2 samples");
    }
    if (frames.size() < 2) {
        throw Error(ErrorCode::insufficient_data, "mission needs at least 2 frames");
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].t > samples[i - 1].t)) {
            throw Error(ErrorCode::ordering, "sample timestamps not strictly increasing at row " +
                                                 std::to_string(i + 1));
        }
    }
    for (std::size_t i = 1; i < frames.size(); ++i) {
        if (!(frames[i] > frames[i - 1])) {
            throw Error(ErrorCode::ordering, "frame timestamps not strictly increasing at line " +
                                                 std::to_string(i + 1));
        }
    }

    const double s0 = samples.front().t;
    const double s1 = samples.back().t;
    const double f0 = frames.front();
    const double f1 = frames.back();
    if (f1 < s0 || f0 > s1) {
        std::ostringstream os;
        os << "frame span [" << f0 << ", " << f1 << "] does not overlap sample span [" << s0 << ", " << s1 << "]";
        throw Error(ErrorCode::coverage, os.str());
    }

    ValidatedMission out;
    if (f0 < s0 || f1 > s1) {
        std::ostringstream os;
        os << "frame clock [" << f0 << ", " << f1 << "] extends beyond sample span [" << s0 << ", " << s1 << "]";
        out.warnings.push_back(os.str());
    }
    out.mission = Mission{std::move(id), std::move(samples), std::move(frames)};
    return out;
}

std::filesystem::path frames_path_for(const std::filesystem::path& imu_path) {
    auto p = imu_path;
    p.replace_extension(".frames");
    return p;
}

ValidatedMission load_mission(const std::filesystem::path& imu_path) {
    auto samples = parse_imu(imu_path);
    auto frames = parse_frames(frames_path_for(imu_path));
    return validate_mission(std::move(samples), std::move(frames), imu_path.stem().string());
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

void write_imu_csv(std::ostream& out, const std::vector<ImuSample>& samples) {
    out << kImuCsvHeader << '\n';
    for (const auto& s : samples) {
        out << format_double(s.t);
        for (double v : s.channels) {
            out << ',' << format_double(v);
        }
        out << '\n';
    }
}

void write_frames(std::ostream& out, const std::vector<double>& frames) {
    for (double f : frames) {
        out << format_double(f) << '\n';
    }
}

void write_mission(const Mission& mission, const std::filesystem::path& imu_path) {
    std::ofstream imu(imu_path, std::ios::binary);
    std::ofstream frm(frames_path_for(imu_path), std::ios::binary);
    if (!imu || !frm) {
        throw Error(ErrorCode::io, "cannot write mission files at " + imu_path.string());
    }
    write_imu_csv(imu, mission.samples);
    write_frames(frm, mission.frames);
}

} // namespace novelty
