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
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "cli/cli.hpp"
#include "novelty/error.hpp"
#include "novelty/random.hpp"
#include "novelty/synth.hpp"

namespace novelty::cli {

LofModel synthetic_model(std::size_t n, std::size_t d, std::size_t k, std::uint64_t seed) {
    if (d == 0 || d % kChannelCount != 0) {
        throw Error(ErrorCode::config, "d must be a positive multiple of " + std::to_string(kChannelCount));
    }
    Rng rng(seed);
    Matrix x(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& v : x.row(i)) {
            v = rng.normal();
        }
    }
    return LofModel::fit(x, {k, kDefaultOffset}, {d / kChannelCount, 3});
}

BenchReport run_bench(const LofModel& model, std::size_t repetitions, double budget_ms, std::uint64_t seed) {
    if (repetitions == 0) {
        throw Error(ErrorCode::config, "repetitions must be >= 1");
    }
    const std::size_t bins = model.meta().bins;
    if (feature_dim(bins) != model.dim()) {
        throw Error(ErrorCode::shape, "model dimension is not 10 * bins");
    }

    ScenarioConfig sc;
    sc.seed = seed;
    sc.duration = 10.0;
    const Mission mission = gen_normal_mission(sc);
    WindowConfig wc;
    wc.span = model.meta().span;
    std::vector<Window> windows;
    for (const auto& w : chop(mission, wc)) {
        if (w.status == WindowStatus::ok) {
            windows.push_back(w);
        }
    }
    if (windows.empty()) {
        throw Error(ErrorCode::insufficient_data, "benchmark mission produced no scorable windows");
    }

    std::vector<double> ms;
    ms.reserve(repetitions);
    double sink = 0.0;
    for (std::size_t r = 0; r < repetitions; ++r) {
        const auto& w = windows[r % windows.size()];
        const auto start = std::chrono::steady_clock::now();
        const auto fv = feature_vector(w, bins);
        const auto score = model.score(fv->values);
        const auto stop = std::chrono::steady_clock::now();
        sink += score.lof;
        ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }
    std::sort(ms.begin(), ms.end());
    auto pct = [&](double p) {
        const auto idx = static_cast<std::size_t>(std::ceil(p * static_cast<double>(ms.size()))) - 1;
        return ms[std::min(idx, ms.size() - 1)];
    };

    BenchReport rep;
    rep.n = model.size();
    rep.d = model.dim();
    rep.k = model.k();
    rep.repetitions = repetitions;
    rep.p50_ms = pct(0.50);
    rep.p95_ms = pct(0.95);
    rep.max_ms = ms.back();
    rep.budget_ms = budget_ms;
    if (std::isnan(sink)) {
        throw Error(ErrorCode::value, "benchmark produced a NaN score");
    }
    return rep;
}

std::string bench_text(const BenchReport& r) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << "model: n=" << r.n << " d=" << r.d << " k=" << r.k << '\n';
    os << "repetitions: " << r.repetitions << '\n';
    os << "p50_ms: " << r.p50_ms << '\n';
    os << "p95_ms: " << r.p95_ms << '\n';
    os << "max_ms: " << r.max_ms << '\n';
    os << "budget_ms: " << r.budget_ms << '\n';
    os << "result: " << (r.within_budget() ? "PASS" : "FAIL") << " (p95 " << (r.within_budget() ? "<" : ">=")
       << " budget)\n";
    return os.str();
}

std::string bench_json(const BenchReport& r) {
    nlohmann::ordered_json j{{"n", r.n},
                             {"d", r.d},
                             {"k", r.k},
                             {"repetitions", r.repetitions},
                             {"p50_ms", r.p50_ms},
                             {"p95_ms", r.p95_ms},
                             {"max_ms", r.max_ms},
                             {"budget_ms", r.budget_ms},
                             {"within_budget", r.within_budget()}};
    return j.dump(2) + "\n";
}

} // namespace novelty::cli
