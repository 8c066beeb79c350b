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

#include "novelty/synth.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <sstream>
#include <string_view>

#include "novelty/error.hpp"
#include "novelty/random.hpp"

namespace novelty {
namespace {

constexpr double kPi = std::numbers::pi;
// Attitude hold gain (1/s) pulling orientation back to its reference; keeps
// the orientation channels stationary instead of random-walking.
constexpr double kAttitudeGain = 0.5;
// Upper bound on the internal orientation integration step.
constexpr double kMaxSubstep = 1e-4;

Vec3 axis_vector(Axis a) noexcept {
    switch (a) {
    case Axis::x: return {1.0, 0.0, 0.0};
    case Axis::y: return {0.0, 1.0, 0.0};
    case Axis::z: return {0.0, 0.0, 1.0};
    }
    return {1.0, 0.0, 0.0};
}

// One-pole low-pass of white noise, scaled to a target stationary std.
class BandLimitedNoise {
public:
    BandLimitedNoise(double stddev, double sample_rate) {
        const double cutoff = sample_rate / 8.0;
        alpha_ = 1.0 - std::exp(-2.0 * kPi * cutoff / sample_rate);
        drive_ = stddev * std::sqrt((2.0 - alpha_) / alpha_);
    }
    double next(Rng& rng) {
        state_ += alpha_ * (drive_ * rng.normal() - state_);
        return state_;
    }

private:
    double alpha_ = 1.0;
    double drive_ = 0.0;
    double state_ = 0.0;
};

std::size_t count_for(double duration, double rate) {
    return static_cast<std::size_t>(std::floor(duration * rate + 1e-9)) + 1;
}

Mission generate(const ScenarioConfig& cfg) {
    validate(cfg);
    Rng rng(cfg.seed);
    std::array<BandLimitedNoise, 3> gyro{BandLimitedNoise(cfg.noise_w, cfg.imu_rate),
                                         BandLimitedNoise(cfg.noise_w, cfg.imu_rate),
                                         BandLimitedNoise(cfg.noise_w, cfg.imu_rate)};
    std::array<BandLimitedNoise, 3> accel{BandLimitedNoise(cfg.noise_a, cfg.imu_rate),
                                          BandLimitedNoise(cfg.noise_a, cfg.imu_rate),
                                          BandLimitedNoise(cfg.noise_a, cfg.imu_rate)};

    const std::size_t n = count_for(cfg.duration, cfg.imu_rate);
    const double dt = 1.0 / cfg.imu_rate;
    const auto substeps = static_cast<std::size_t>(std::ceil(dt / kMaxSubstep));
    const double h = dt / static_cast<double>(substeps);

    // The flip is a world-frame rotation F(t) applied on top of the base
    // attitude process B(t): q = F * B. The body rate is then the base rate
    // plus the pulse expressed in body axes, so outside the pulse every gyro
    // sample matches the flip-free mission with the same seed.
    const Vec3 flip_axis = cfg.flip ? axis_vector(cfg.flip->axis) : Vec3{};

    Mission m;
    m.samples.reserve(n);
    Quat base = Quat::identity();
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / cfg.imu_rate;

        Vec3 w{};
        for (std::size_t a = 0; a < 3; ++a) {
            w[a] = gyro[a].next(rng);
        }
        Quat err = base;
        if (err.w < 0.0) {
            err = {-err.x, -err.y, -err.z, -err.w};
        }
        w[0] -= 2.0 * kAttitudeGain * err.x;
        w[1] -= 2.0 * kAttitudeGain * err.y;
        w[2] -= 2.0 * kAttitudeGain * err.z;

        Quat q = base;
        Vec3 reported = w;
        if (cfg.flip) {
            q = Quat::from_axis_angle(flip_axis, flip_angle(*cfg.flip, t)) * base;
            const double rate = flip_rate(*cfg.flip, t);
            if (rate != 0.0) {
                const Vec3 pulse = rotate_to_body(base, {rate * flip_axis[0], rate * flip_axis[1], rate * flip_axis[2]});
                for (std::size_t a = 0; a < 3; ++a) {
                    reported[a] += pulse[a];
                }
            }
        }

        ImuSample s;
        s.t = t;
        s[Channel::qx] = q.x;
        s[Channel::qy] = q.y;
        s[Channel::qz] = q.z;
        s[Channel::qw] = q.w;
        s[Channel::wx] = reported[0];
        s[Channel::wy] = reported[1];
        s[Channel::wz] = reported[2];
        const Vec3 g = rotate_to_body(q, {0.0, 0.0, kGravity});
        s[Channel::ax] = g[0] + accel[0].next(rng);
        s[Channel::ay] = g[1] + accel[1].next(rng);
        s[Channel::az] = g[2] + accel[2].next(rng);
        m.samples.push_back(s);

        for (std::size_t k = 0; k < substeps; ++k) {
            base = integrate_quat(base, w, h);
        }
    }

    const std::size_t frames = count_for(cfg.duration, cfg.frame_rate);
    m.frames.reserve(frames);
    for (std::size_t j = 0; j < frames; ++j) {
        m.frames.push_back(static_cast<double>(j) / cfg.frame_rate);
    }
    return m;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_field(std::string_view key, std::string_view text) {
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw Error(ErrorCode::config, "field '" + std::string(key) + "': cannot parse '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

void validate(const ScenarioConfig& cfg) {
    auto positive = [](std::string_view name, double v) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(ErrorCode::config, "field '" + std::string(name) + "' must be positive");
        }
    };
    positive("duration", cfg.duration);
    positive("imu_rate", cfg.imu_rate);
    positive("frame_rate", cfg.frame_rate);
    if (!(cfg.noise_w >= 0.0) || !std::isfinite(cfg.noise_w)) {
        throw Error(ErrorCode::config, "field 'noise_w' must be >= 0");
    }
    if (!(cfg.noise_a >= 0.0) || !std::isfinite(cfg.noise_a)) {
        throw Error(ErrorCode::config, "field 'noise_a' must be >= 0");
    }
    if (cfg.flip) {
        const auto& f = *cfg.flip;
        positive("flip_duration", f.duration);
        positive("flip_peak_rate", f.peak_rate);
        if (!(f.t0 >= 0.0) || f.t0 + f.duration > cfg.duration) {
            throw Error(ErrorCode::config, "field 'flip_t0': flip window must lie within [0, duration]");
        }
        if (f.peak_rate * f.duration * 0.5 < kPi) {
            throw Error(ErrorCode::config,
                        "field 'flip_peak_rate': peak_rate * duration / 2 must reach pi for a half turn");
        }
    }
}

double flip_pulse_length(const FlipConfig& flip) noexcept { return 2.0 * kPi / flip.peak_rate; }

double flip_rate(const FlipConfig& flip, double t) noexcept {
    const double len = flip_pulse_length(flip);
    const double u = t - flip.t0;
    if (u < 0.0 || u > len) {
        return 0.0;
    }
    return 0.5 * flip.peak_rate * (1.0 - std::cos(2.0 * kPi * u / len));
}

double flip_angle(const FlipConfig& flip, double t) noexcept {
    const double len = flip_pulse_length(flip);
    const double u = t - flip.t0;
    if (u <= 0.0) {
        return 0.0;
    }
    if (u >= len) {
        return kPi;
    }
    return 0.5 * flip.peak_rate * (u - len / (2.0 * kPi) * std::sin(2.0 * kPi * u / len));
}

Mission gen_normal_mission(const ScenarioConfig& cfg) {
    if (cfg.flip) {
        throw Error(ErrorCode::config, "normal mission config must not contain a flip");
    }
    return generate(cfg);
}

Mission gen_flip_mission(const ScenarioConfig& cfg) {
    if (!cfg.flip) {
        throw Error(ErrorCode::config, "flip mission config requires a flip");
    }
    return generate(cfg);
}

Mission gen_mission(const ScenarioConfig& cfg) { return generate(cfg); }

SuiteConfig parse_suite_config(std::istream& in) {
    SuiteConfig cfg;
    auto& sc = cfg.scenario;
    FlipConfig flip = sc.flip.value_or(FlipConfig{});
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::config, "line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = trim(view.substr(0, eq));
        auto value = trim(view.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }

        if (key == "seed") {
            sc.seed = parse_field<std::uint64_t>(key, value);
        } else if (key == "duration") {
            sc.duration = parse_field<double>(key, value);
        } else if (key == "imu_rate") {
            sc.imu_rate = parse_field<double>(key, value);
        } else if (key == "frame_rate") {
            sc.frame_rate = parse_field<double>(key, value);
        } else if (key == "noise_w") {
            sc.noise_w = parse_field<double>(key, value);
        } else if (key == "noise_a") {
            sc.noise_a = parse_field<double>(key, value);
        } else if (key == "normal_missions") {
            cfg.normal_missions = parse_field<std::size_t>(key, value);
        } else if (key == "abnormal_missions") {
            cfg.abnormal_missions = parse_field<std::size_t>(key, value);
        } else if (key == "flip_t0") {
            flip.t0 = parse_field<double>(key, value);
        } else if (key == "flip_duration") {
            flip.duration = parse_field<double>(key, value);
        } else if (key == "flip_peak_rate") {
            flip.peak_rate = parse_field<double>(key, value);
        } else if (key == "flip_axis") {
            if (value == "x") {
                flip.axis = Axis::x;
            } else if (value == "y") {
                flip.axis = Axis::y;
            } else if (value == "z") {
                flip.axis = Axis::z;
            } else {
                throw Error(ErrorCode::config, "field 'flip_axis': expected x, y or z");
            }
        } else {
            throw Error(ErrorCode::config, "unknown field '" + std::string(key) + "'");
        }
    }
    sc.flip = flip;
    validate(sc);
    return cfg;
}

std::vector<GeneratedMission> generate_suite(const SuiteConfig& cfg) {
    std::vector<GeneratedMission> out;
    auto name = [](std::string_view prefix, std::size_t i) {
        std::ostringstream os;
        os << prefix << '_' << (i < 10 ? "0" : "") << i;
        return os.str();
    };
    for (std::size_t i = 1; i <= cfg.normal_missions; ++i) {
        ScenarioConfig sc = cfg.scenario;
        sc.flip.reset();
        sc.seed = mix_seed(cfg.scenario.seed, i);
        auto m = gen_normal_mission(sc);
        m.id = name("normal", i);
        out.push_back({m.id, "normal", sc, std::move(m)});
    }
    for (std::size_t i = 1; i <= cfg.abnormal_missions; ++i) {
        ScenarioConfig sc = cfg.scenario;
        if (!sc.flip) {
            sc.flip = FlipConfig{};
        }
        sc.seed = mix_seed(cfg.scenario.seed, 1000 + i);
        auto m = gen_flip_mission(sc);
        m.id = name("abnormal", i);
        out.push_back({m.id, "abnormal", sc, std::move(m)});
    }
    return out;
}

} // namespace novelty
