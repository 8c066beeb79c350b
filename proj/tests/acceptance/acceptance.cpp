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

// Acceptance suite: runs every criterion at its stated tolerance and prints one
// PASS/FAIL line each. Exit status is non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli/cli.hpp"
#include "direct_dft.hpp"
#include "naive_lof.hpp"
#include "novelty/lof.hpp"
#include "novelty/model_io.hpp"
#include "novelty/normalize.hpp"
#include "novelty/pipeline.hpp"
#include "novelty/spectral.hpp"
#include "novelty/synth.hpp"

namespace fs = std::filesystem;
using namespace novelty;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

oracle::Rows to_rows(const Matrix& m) {
    oracle::Rows rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        rows.emplace_back(m.row(i).begin(), m.row(i).end());
    }
    return rows;
}

Matrix gaussian(std::size_t n, std::size_t d, std::mt19937_64& gen) {
    std::normal_distribution<double> nd;
    Matrix m(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& v : m.row(i)) {
            v = nd(gen);
        }
    }
    return m;
}

std::set<std::size_t> as_set(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

class ScratchDir {
public:
    explicit ScratchDir(const std::string& tag)
        : path_(fs::temp_directory_path() / ("novelty_acceptance_" + tag + "_" + std::to_string(::getpid()))) {
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~ScratchDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome lof_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 gen(20240601);
    std::uniform_int_distribution<std::size_t> n_dist(50, 500);
    const std::size_t dims[] = {2, 10, 160};
    const std::size_t ks[] = {1, 5, 15};
    double worst = 0.0;
    std::size_t compared = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = n_dist(gen);
        const std::size_t d = dims[trial % 3];
        const std::size_t k = ks[(trial / 3) % 3];
        const auto x = gaussian(n, d, gen);
        const auto model = LofModel::fit(x, {k, kDefaultOffset});
        const auto rows = to_rows(x);
        const auto ref = oracle::fit(rows, k);
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(model.k_distances()[i] - ref.kdist[i]));
            worst = std::max(worst, std::abs(model.lrd()[i] - ref.lrd[i]));
            worst = std::max(worst, std::abs(model.lof(x.row(i)) - ref.lof(rows[i])));
            compared += 3;
        }
        const auto queries = gaussian(50, d, gen);
        for (std::size_t q = 0; q < 50; ++q) {
            const std::vector<double> v(queries.row(q).begin(), queries.row(q).end());
            worst = std::max(worst, std::abs(model.lof(v) - ref.lof(v)));
            ++compared;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst <= 1e-9 && secs < 60.0,
            fmt("20 datasets, %zu values, max |diff| = %.3g (tol 1e-9), %.1f s (limit 60 s)", compared, worst, secs)};
}

Outcome tie_handling() {
    std::size_t hoods = 0;
    std::size_t oversized = 0;
    std::size_t mismatches = 0;
    auto check = [&](const Matrix& x, std::size_t k, const std::vector<std::vector<double>>& queries) {
        const auto model = LofModel::fit_with_stats(x, NormStats::identity(x.cols()), {k, kDefaultOffset});
        const auto rows = to_rows(x);
        const auto ref = oracle::fit(rows, k, false);
        for (std::size_t i = 0; i < x.rows(); ++i) {
            const auto got = knn_query(model.train(), model.train().row(i), k, i);
            const auto want = oracle::neighborhood(rows, rows[i], k, i);
            mismatches += as_set(got.indices) != as_set(want.members) || got.k_distance != want.k_distance ||
                          model.k_distances()[i] != ref.kdist[i];
            oversized += got.indices.size() > k;
            ++hoods;
        }
        for (const auto& q : queries) {
            const auto got = knn_query(model.train(), q, k);
            const auto want = oracle::neighborhood(rows, q, k, rows.size());
            mismatches += as_set(got.indices) != as_set(want.members);
            mismatches += std::abs(model.lof(q) - ref.lof(q)) > 1e-9;
            oversized += got.indices.size() > k;
            ++hoods;
        }
    };
    // 1-D evenly spaced points: interior points have two neighbors at every distance.
    Matrix line(0, 1);
    for (int i = 0; i < 20; ++i) {
        line.append_row(std::vector<double>{double(i)});
    }
    for (std::size_t k : {1u, 3u, 5u}) {
        check(line, k, {{4.5}, {10.5}, {-3.0}});
    }
    // 2-D and 3-D integer lattices.
    Matrix grid2(0, 2);
    for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) {
            grid2.append_row(std::vector<double>{double(a), double(b)});
        }
    }
    for (std::size_t k : {1u, 2u, 4u, 6u, 9u}) {
        check(grid2, k, {{2.5, 2.5}, {0.5, 3.0}, {10.0, 10.0}});
    }
    Matrix grid3(0, 3);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            for (int c = 0; c < 4; ++c) {
                grid3.append_row(std::vector<double>{double(a), double(b), double(c)});
            }
        }
    }
    for (std::size_t k : {2u, 6u, 7u}) {
        check(grid3, k, {{1.5, 1.5, 1.5}, {0.0, 0.0, 5.0}});
    }
    return {mismatches == 0 && oversized > 0,
            fmt("%zu neighborhoods, %zu larger than k, %zu membership/value mismatches", hoods, oversized,
                mismatches)};
}

Outcome uniform_density() {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrix x(400, 2);
    for (std::size_t i = 0; i < 400; ++i) {
        x(i, 0) = u(gen);
        x(i, 1) = u(gen);
    }
    const auto model = LofModel::fit_with_stats(x, NormStats::identity(2), {15, kDefaultOffset});
    std::uniform_real_distribution<double> inner(0.2, 0.8);
    int inside = 0;
    for (int q = 0; q < 100; ++q) {
        const double v = model.lof(std::vector<double>{inner(gen), inner(gen)});
        inside += v >= 0.85 && v <= 1.2;
    }
    return {inside >= 95, fmt("%d/100 interior queries with LOF in [0.85, 1.2] (need >= 95)", inside)};
}

Outcome periodogram_parseval() {
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<std::size_t> n_dist(16, 1024);
    std::uniform_real_distribution<double> fs_dist(1.0, 1000.0);
    std::normal_distribution<double> nd(0.0, 2.0);
    double worst_rel = 0.0;
    for (int s = 0; s < 50; ++s) {
        const std::size_t n = n_dist(gen);
        const double fs = fs_dist(gen);
        std::vector<double> x(n);
        for (auto& v : x) {
            v = nd(gen) + 0.5;
        }
        const auto p = periodogram(x, fs);
        long double total = 0.0L;
        for (double v : p.values) {
            total += static_cast<long double>(v) * fs / static_cast<double>(n);
        }
        const double ms = oracle::mean_square(x);
        worst_rel = std::max(worst_rel, std::abs(static_cast<double>(total) - ms) / ms);
    }
    double worst_share = 1.0;
    for (std::size_t n : {16u, 100u, 255u, 1024u}) {
        for (std::size_t k0 : {std::size_t{1}, n / 5, (n - 1) / 2}) {
            std::vector<double> x(n);
            for (std::size_t t = 0; t < n; ++t) {
                x[t] = 3.0 * std::cos(2 * std::numbers::pi * static_cast<double>((k0 * t) % n) / n + 0.3);
            }
            const auto p = periodogram(x, 250.0).values;
            double total = 0.0;
            for (double v : p) {
                total += v;
            }
            worst_share = std::min(worst_share, p[k0] / total);
        }
    }
    return {worst_rel <= 1e-9 && worst_share >= 1.0 - 1e-9,
            fmt("Parseval max rel err %.3g (tol 1e-9); min power share in sinusoid bin %.15f (need >= 1-1e-9)",
                worst_rel, worst_share)};
}

Outcome normalization() {
    std::mt19937_64 gen(5);
    double worst_mean = 0.0;
    double worst_var = 0.0;
    bool constants_zero = true;
    for (int trial = 0; trial < 10; ++trial) {
        auto x = gaussian(100, 160, gen);
        std::uniform_real_distribution<double> scale(-4.0, 4.0);
        std::vector<double> sc(160);
        std::vector<double> sh(160);
        for (std::size_t j = 0; j < 160; ++j) {
            sc[j] = std::pow(10.0, scale(gen));
            sh[j] = 100.0 * scale(gen);
        }
        for (std::size_t i = 0; i < 100; ++i) {
            for (std::size_t j = 0; j < 160; ++j) {
                x(i, j) = j % 17 == 3 ? sh[j] : x(i, j) * sc[j] + sh[j];
            }
        }
        const auto z = apply_norm(fit_norm(x), x);
        for (std::size_t j = 0; j < 160; ++j) {
            long double s = 0.0L;
            for (std::size_t i = 0; i < 100; ++i) {
                s += z(i, j);
            }
            const long double mu = s / 100;
            long double ss = 0.0L;
            for (std::size_t i = 0; i < 100; ++i) {
                ss += (z(i, j) - mu) * (z(i, j) - mu);
            }
            worst_mean = std::max(worst_mean, std::abs(static_cast<double>(mu)));
            if (j % 17 == 3) {
                for (std::size_t i = 0; i < 100; ++i) {
                    constants_zero = constants_zero && z(i, j) == 0.0;
                }
            } else {
                worst_var = std::max(worst_var, std::abs(static_cast<double>(ss / 100) - 1.0));
            }
        }
    }
    return {worst_mean < 1e-9 && worst_var < 1e-6 && constants_zero,
            fmt("max |mean| %.3g (tol 1e-9), max |var-1| %.3g (tol 1e-6), constant columns exactly 0: %s", worst_mean,
                worst_var, constants_zero ? "yes" : "no")};
}

Outcome end_to_end() {
    const auto start = std::chrono::steady_clock::now();
    const SuiteConfig suite;
    const auto missions = generate_suite(suite);
    const PipelineConfig cfg;
    std::vector<Mission> train;
    const Mission* fresh = nullptr;
    std::vector<const GeneratedMission*> flips;
    for (const auto& g : missions) {
        if (g.label == "normal") {
            if (train.size() < 5) {
                train.push_back(g.mission);
            } else {
                fresh = &g.mission;
            }
        } else {
            flips.push_back(&g);
        }
    }
    const auto model = LofModel::fit(training_matrix(train, cfg));

    std::size_t normal_scored = 0;
    std::size_t normal_ok = 0;
    for (const auto& s : score_mission(model, *fresh, cfg)) {
        if (s.status == ScoreStatus::scored) {
            ++normal_scored;
            normal_ok += s.abnormality >= kDefaultThreshold;
        }
    }
    const double pass_rate = static_cast<double>(normal_ok) / static_cast<double>(normal_scored);

    std::size_t overlap = 0;
    std::size_t caught = 0;
    std::size_t extremum_inside = 0;
    for (const auto* g : flips) {
        const auto& flip = *g->config.flip;
        const double t0 = flip.t0;
        const double t1 = flip.t0 + flip_pulse_length(flip);
        const auto scores = score_mission(model, g->mission, cfg);
        const auto& frames = g->mission.frames;
        const std::size_t span = cfg.window.span;
        double min_a = INFINITY;
        bool min_inside = false;
        for (const auto& s : scores) {
            if (s.status != ScoreStatus::scored) {
                continue;
            }
            const double ws = frames[s.frame_index - span];
            const double we = frames[s.frame_index];
            const bool hits = ws < t1 && we > t0;
            if (hits) {
                ++overlap;
                caught += s.abnormality < kDefaultThreshold;
            }
            if (s.abnormality < min_a) {
                min_a = s.abnormality;
                min_inside = hits;
            }
        }
        extremum_inside += min_inside;
    }
    const double catch_rate = static_cast<double>(caught) / static_cast<double>(overlap);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = pass_rate >= 0.9 && catch_rate >= 0.8 && extremum_inside == flips.size() && secs < 120.0;
    return {ok, fmt("normal frames with abnormality >= 0.4: %.1f%% of %zu (need >= 90%%); flip-window frames "
                    "flagged: %.1f%% of %zu (need >= 80%%); minimum inside flip window in %zu/%zu missions; %.1f s",
                    100.0 * pass_rate, normal_scored, 100.0 * catch_rate, overlap, extremum_inside, flips.size(),
                    secs)};
}

Outcome novelty_purity() {
    std::mt19937_64 gen(3);
    const auto model = LofModel::fit(gaussian(600, 160, gen));
    ScratchDir dir("purity");
    save(model, dir.path() / "before.novm");
    const auto queries = gaussian(10000, 160, gen);
    double sink = 0.0;
    for (std::size_t q = 0; q < queries.rows(); ++q) {
        sink += model.score(queries.row(q)).abnormality;
    }
    save(model, dir.path() / "after.novm");
    const bool same = slurp(dir.path() / "before.novm") == slurp(dir.path() / "after.novm");
    return {same && std::isfinite(sink),
            fmt("10000 queries scored; model file byte-identical afterwards: %s", same ? "yes" : "no")};
}

Outcome serialization() {
    std::mt19937_64 gen(4);
    const auto model = LofModel::fit(gaussian(300, 160, gen), {15, 1.5}, {16, 3});
    ScratchDir dir("serial");
    const auto file = dir.path() / "m.novm";
    save(model, file);
    const auto back = load(file);
    double worst = 0.0;
    const auto queries = gaussian(100, 160, gen);
    for (std::size_t q = 0; q < 100; ++q) {
        worst = std::max(worst, std::abs(back.score(queries.row(q)).abnormality -
                                         model.score(queries.row(q)).abnormality));
    }
    auto code_of = [](const std::vector<std::uint8_t>& bytes) -> std::string {
        try {
            deserialize(bytes);
        } catch (const Error& e) {
            return std::string(to_string(e.code()));
        }
        return "none";
    };
    const auto good = serialize(model);
    auto flipped = good;
    flipped[good.size() / 2] ^= 0x01;
    auto versioned = good;
    versioned[4] = 99;
    const std::vector<std::uint8_t> cut(good.begin(), good.begin() + 1000);
    auto magic = good;
    magic[1] = 'X';
    const auto c_corrupt = code_of(flipped);
    const auto c_version = code_of(versioned);
    const auto c_trunc = code_of(cut);
    const auto c_magic = code_of(magic);
    const bool ok = worst <= 1e-12 && c_corrupt == "checksum error" && c_version == "version error" &&
                    c_trunc == "truncated file" && c_magic == "format error";
    return {ok, fmt("max |d abnormality| %.3g (tol 1e-12); corrupted -> %s, version 99 -> %s, truncated -> %s, "
                    "bad magic -> %s",
                    worst, c_corrupt.c_str(), c_version.c_str(), c_trunc.c_str(), c_magic.c_str())};
}

Outcome realtime_budget() {
    const auto model = cli::synthetic_model(5000, 160, 15, 1);
    const auto rep = cli::run_bench(model, 300, 1000.0 / 30.0, 1);
    return {rep.within_budget(), fmt("n=%zu d=%zu k=%zu: p50 %.3f ms, p95 %.3f ms, max %.3f ms (budget %.1f ms)",
                                     rep.n, rep.d, rep.k, rep.p50_ms, rep.p95_ms, rep.max_ms, rep.budget_ms)};
}

Outcome determinism() {
    ScratchDir dir("determinism");
    auto pipeline = [&](const std::string& tag) -> bool {
        const fs::path root = dir.path() / tag;
        std::ostringstream out;
        std::ostringstream err;
        const auto data = (root / "data").string();
        if (cli::run({"synth", "--seed", "11", "--out", data}, out, err) != 0) {
            return false;
        }
        std::vector<std::string> fit{"fit", "--out", (root / "fit").string()};
        for (int i = 1; i <= 5; ++i) {
            fit.push_back(data + "/normal_0" + std::to_string(i) + ".csv");
        }
        if (cli::run(fit, out, err) != 0) {
            return false;
        }
        std::vector<std::string> score{"score", "--model", (root / "fit" / "model.novm").string(), "--out",
                                       (root / "scores").string()};
        for (int i = 1; i <= 6; ++i) {
            score.push_back(data + "/normal_0" + std::to_string(i) + ".csv");
            score.push_back(data + "/abnormal_0" + std::to_string(i) + ".csv");
        }
        return cli::run(score, out, err) == 0;
    };
    if (!pipeline("a") || !pipeline("b")) {
        return {false, "pipeline run failed"};
    }
    std::size_t files = 0;
    std::size_t differing = 0;
    for (const auto& e : fs::recursive_directory_iterator(dir.path() / "a")) {
        if (e.path().extension() != ".csv" && e.path().extension() != ".frames" &&
            e.path().extension() != ".novm") {
            continue;
        }
        const auto rel = fs::relative(e.path(), dir.path() / "a");
        ++files;
        differing += slurp(e.path()) != slurp(dir.path() / "b" / rel);
    }
    return {files >= 36 && differing == 0,
            fmt("%zu output files (missions, model, score CSVs) compared across two runs, %zu differ", files,
                differing)};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "LOF oracle equivalence", lof_oracle_equivalence},
        {2, "tie handling", tie_handling},
        {3, "uniform-density LOF", uniform_density},
        {4, "periodogram Parseval and bin concentration", periodogram_parseval},
        {5, "normalization moments", normalization},
        {6, "end-to-end normal vs flip separation", end_to_end},
        {7, "novelty-mode purity", novelty_purity},
        {8, "serialization round trip and error codes", serialization},
        {9, "real-time scoring budget", realtime_budget},
        {10, "determinism of synth+fit+score", determinism},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        only.insert(std::atoi(argv[i]));
    }
    int failed = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.contains(c.id)) {
            continue;
        }
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
