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

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/cli.hpp"
#include "novelty/error.hpp"
#include "novelty/ingest.hpp"
#include "novelty/model_io.hpp"
#include "novelty/synth.hpp"
#include "novelty/version.hpp"

namespace fs = std::filesystem;

namespace novelty::cli {
namespace {

using nlohmann::ordered_json;

void add_run_options(CLI::App* app, RunConfig& cfg, bool pipeline = true) {
    if (pipeline) {
        app->add_option("-k,--k", cfg.k, "Neighbors per LOF neighborhood")->capture_default_str()->check(
            CLI::PositiveNumber);
        app->add_option("--bins", cfg.bins, "PSD bins per channel")->capture_default_str()->check(CLI::PositiveNumber);
        app->add_option("--span", cfg.span, "Frame intervals per window")->capture_default_str()->check(
            CLI::PositiveNumber);
        app->add_option("--min-samples,--min_samples", cfg.min_samples, "Minimum samples in a scored window")
            ->capture_default_str()
            ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
        app->add_option("--offset", cfg.offset, "abnormality = offset - LOF")->capture_default_str();
    }
    app->add_option("--threshold", cfg.threshold, "Flag frames with abnormality below this")->capture_default_str();
    app->add_option("--seed", cfg.seed, "Seed for synthetic data")->capture_default_str();
    app->add_option("--model", cfg.model, "Model file");
    app->add_option("--out", cfg.out, "Output directory (file for plot)");
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io, "cannot open " + p.string());
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const fs::path& p, const std::string& text) {
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path());
    }
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::io, "cannot write " + p.string());
    }
    out << text;
}

void write_run_json(const fs::path& dir, const std::string& command, const RunConfig& cfg,
                    const std::vector<std::string>& inputs, ordered_json extra = ordered_json::object()) {
    ordered_json j;
    j["command"] = command;
    j["version"] = std::string(kVersion);
    j["k"] = cfg.k;
    j["bins"] = cfg.bins;
    j["span"] = cfg.span;
    j["min_samples"] = cfg.min_samples;
    j["offset"] = cfg.offset;
    j["threshold"] = cfg.threshold;
    j["seed"] = cfg.seed;
    j["model"] = cfg.model;
    j["out"] = cfg.out;
    j["inputs"] = inputs;
    for (auto& [key, value] : extra.items()) {
        j[key] = value;
    }
    write_text(dir / "run.json", j.dump(2) + "\n");
}

Mission load_checked(const std::string& path, std::ostream& err) {
    auto vm = load_mission(path);
    for (const auto& w : vm.warnings) {
        err << "warning: " << path << ": " << w << '\n';
    }
    return std::move(vm.mission);
}

int cmd_fit(RunConfig cfg, const std::vector<std::string>& inputs, std::ostream& out, std::ostream& err) {
    const fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
    if (cfg.model.empty()) {
        cfg.model = (dir / "model.novm").string();
    }
    std::vector<Mission> missions;
    for (const auto& p : inputs) {
        missions.push_back(load_checked(p, err));
    }
    const auto pc = cfg.pipeline();
    ordered_json per_mission = ordered_json::array();
    Matrix x(0, pc.dim());
    for (const auto& m : missions) {
        std::size_t windows = 0;
        for (const auto& f : extract_frames(m, pc)) {
            if (f.features) {
                x.append_row(f.features->values);
                ++windows;
            }
        }
        per_mission.push_back({{"id", m.id}, {"windows", windows}});
    }
    if (x.rows() <= cfg.k) {
        throw Error(ErrorCode::insufficient_data, "training produced " + std::to_string(x.rows()) +
                                                      " scorable windows; need more than k=" + std::to_string(cfg.k));
    }
    const auto model = LofModel::fit(x, {cfg.k, cfg.offset}, {cfg.bins, cfg.span});
    fs::create_directories(dir);
    if (fs::path(cfg.model).has_parent_path()) {
        fs::create_directories(fs::path(cfg.model).parent_path());
    }
    save(model, cfg.model);

    ordered_json report{{"n", model.size()},     {"d", model.dim()},   {"k", model.k()},
                        {"bins", cfg.bins},      {"span", cfg.span},   {"min_samples", cfg.min_samples},
                        {"offset", cfg.offset},  {"model", cfg.model}, {"missions", per_mission}};
    write_text(dir / "fit_report.json", report.dump(2) + "\n");
    write_run_json(dir, "fit", cfg, inputs);
    out << "fitted LOF model: n=" << model.size() << " d=" << model.dim() << " k=" << model.k() << " -> "
        << cfg.model << '\n';
    return kExitOk;
}

PipelineConfig pipeline_for(const LofModel& model, const RunConfig& cfg) {
    return {{model.meta().span, cfg.min_samples}, model.meta().bins};
}

int cmd_score(RunConfig cfg, const std::vector<std::string>& inputs, bool dump_features, std::ostream& out,
              std::ostream& err) {
    if (cfg.model.empty()) {
        throw Error(ErrorCode::config, "--model is required");
    }
    const auto model = load(cfg.model);
    cfg.k = model.k();
    cfg.offset = model.offset();
    cfg.bins = model.meta().bins;
    cfg.span = model.meta().span;
    const auto pc = pipeline_for(model, cfg);
    if (cfg.out.empty() && inputs.size() != 1) {
        throw Error(ErrorCode::config, "scoring several missions requires --out");
    }
    if (dump_features && cfg.out.empty()) {
        throw Error(ErrorCode::config, "--features requires --out");
    }
    for (const auto& p : inputs) {
        const auto mission = load_checked(p, err);
        const auto scores = score_mission(model, mission, pc, cfg.threshold);
        std::ostringstream csv;
        write_scores_csv(csv, scores);
        if (cfg.out.empty()) {
            out << csv.str();
        } else {
            write_text(fs::path(cfg.out) / (fs::path(p).stem().string() + ".scores.csv"), csv.str());
        }
        if (dump_features) {
            std::vector<FeatureVector> fvs;
            for (auto& f : extract_frames(mission, pc)) {
                if (f.features) {
                    fvs.push_back(std::move(*f.features));
                }
            }
            std::ostringstream fcsv;
            write_feature_csv(fcsv, fvs);
            write_text(fs::path(cfg.out) / (fs::path(p).stem().string() + ".features.csv"), fcsv.str());
        }
    }
    if (!cfg.out.empty()) {
        write_run_json(cfg.out, "score", cfg, inputs);
    }
    return kExitOk;
}

std::vector<std::pair<std::string, std::string>> read_manifest(const fs::path& path) {
    std::istringstream in(read_text(path));
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::istringstream ls(line);
        std::string label;
        std::string file;
        if (!(ls >> label >> file)) {
            throw Error(ErrorCode::format, path.string() + ": line " + std::to_string(line_no) +
                                               ": expected '<label> <path>'");
        }
        fs::path fp(file);
        if (fp.is_relative()) {
            fp = path.parent_path() / fp;
        }
        entries.emplace_back(label, fp.string());
    }
    return entries;
}

int cmd_eval(RunConfig cfg, const std::vector<std::string>& normal, const std::vector<std::string>& abnormal,
             const std::vector<std::string>& unlabeled, const std::string& manifest, std::ostream& out,
             std::ostream& err) {
    if (!unlabeled.empty()) {
        throw Error(ErrorCode::config, "unlabeled mission " + unlabeled.front() +
                                           "; pass missions with --normal/--abnormal or --manifest");
    }
    if (cfg.model.empty()) {
        throw Error(ErrorCode::config, "--model is required");
    }
    std::vector<std::pair<std::string, std::string>> entries;
    if (!manifest.empty()) {
        entries = read_manifest(manifest);
    }
    for (const auto& p : normal) {
        entries.emplace_back("normal", p);
    }
    for (const auto& p : abnormal) {
        entries.emplace_back("abnormal", p);
    }
    if (entries.empty()) {
        throw Error(ErrorCode::config, "no missions to evaluate");
    }

    const auto model = load(cfg.model);
    cfg.k = model.k();
    cfg.offset = model.offset();
    cfg.bins = model.meta().bins;
    cfg.span = model.meta().span;
    std::vector<LabeledMission> missions;
    std::vector<std::string> inputs;
    for (const auto& [label, path] : entries) {
        if (label != "normal" && label != "abnormal") {
            throw Error(ErrorCode::config, "mission " + path + " has label '" + label +
                                               "', expected normal or abnormal");
        }
        missions.push_back({label, load_checked(path, err)});
        inputs.push_back(label + ":" + path);
    }
    const auto report = evaluate(model, missions, pipeline_for(model, cfg), cfg.threshold);
    const auto text = report_text(report);
    out << text;
    if (!cfg.out.empty()) {
        write_text(fs::path(cfg.out) / "metrics.txt", text);
        write_text(fs::path(cfg.out) / "metrics.json", report_json(report));
        write_run_json(cfg.out, "eval", cfg, inputs);
    }
    return kExitOk;
}

int cmd_synth(RunConfig cfg, const std::string& scenario, bool seed_given, std::ostream& out) {
    SuiteConfig suite;
    if (!scenario.empty()) {
        std::istringstream in(read_text(scenario));
        suite = parse_suite_config(in);
    }
    if (seed_given) {
        suite.scenario.seed = cfg.seed;
    }
    cfg.seed = suite.scenario.seed;
    const fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
    fs::create_directories(dir);

    std::ostringstream manifest;
    for (const auto& g : generate_suite(suite)) {
        write_mission(g.mission, dir / (g.name + ".csv"));
        manifest << g.label << ' ' << g.name << ".csv\n";
    }
    write_text(dir / "manifest.txt", manifest.str());

    const auto& sc = suite.scenario;
    ordered_json scenario_json{{"seed", sc.seed},
                               {"duration", sc.duration},
                               {"imu_rate", sc.imu_rate},
                               {"frame_rate", sc.frame_rate},
                               {"noise_w", sc.noise_w},
                               {"noise_a", sc.noise_a},
                               {"normal_missions", suite.normal_missions},
                               {"abnormal_missions", suite.abnormal_missions}};
    if (sc.flip) {
        const char* axes[] = {"x", "y", "z"};
        scenario_json["flip_t0"] = sc.flip->t0;
        scenario_json["flip_duration"] = sc.flip->duration;
        scenario_json["flip_peak_rate"] = sc.flip->peak_rate;
        scenario_json["flip_axis"] = axes[static_cast<int>(sc.flip->axis)];
    }
    write_run_json(dir, "synth", cfg, scenario.empty() ? std::vector<std::string>{} : std::vector{scenario},
                   {{"scenario", scenario_json}});
    out << "wrote " << suite.normal_missions << " normal and " << suite.abnormal_missions << " abnormal missions to "
        << dir.string() << '\n';
    return kExitOk;
}

int cmd_bench(RunConfig cfg, std::size_t n, std::size_t d, std::size_t repetitions, double budget_ms,
              std::ostream& out) {
    if (repetitions == 0) {
        throw Error(ErrorCode::config, "--repetitions must be >= 1");
    }
    const auto model = cfg.model.empty() ? synthetic_model(n, d, cfg.k, cfg.seed) : load(cfg.model);
    const auto report = run_bench(model, repetitions, budget_ms, cfg.seed);
    out << bench_text(report);
    if (!cfg.out.empty()) {
        write_text(fs::path(cfg.out) / "bench.json", bench_json(report));
        write_run_json(cfg.out, "bench", cfg, {}, {{"n", n}, {"d", d}, {"repetitions", repetitions}});
    }
    return kExitOk;
}

int cmd_plot(const RunConfig& cfg, const std::vector<std::string>& inputs, std::ostream& out) {
    if (cfg.out.empty()) {
        throw Error(ErrorCode::config, "--out <file.svg> is required");
    }
    std::vector<PlotSegment> segments;
    for (const auto& p : inputs) {
        std::istringstream in(read_text(p));
        PlotSegment seg{fs::path(p).stem().string(), {}};
        try {
            seg.scores = read_scores_csv(in, cfg.threshold);
        } catch (const Error& e) {
            throw Error(e.code(), p + ": " + e.detail());
        }
        if (seg.scores.empty()) {
            throw Error(ErrorCode::format, p + ": score CSV has no rows");
        }
        const auto dot = seg.label.find(".scores");
        if (dot != std::string::npos) {
            seg.label.erase(dot);
        }
        segments.push_back(std::move(seg));
    }
    const fs::path svg(cfg.out);
    write_text(svg, render_svg(segments, cfg.threshold));
    write_run_json(svg.has_parent_path() ? svg.parent_path() : fs::path("."), "plot", cfg, inputs);
    out << "wrote " << svg.string() << '\n';
    return kExitOk;
}

// Fill options of `sub` from a key = value file. Entries only apply to options
// that were not given on the command line.
void apply_config_file(CLI::App* sub, const std::string& path) {
    std::istringstream in(read_text(path));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::config, path + ": line " + std::to_string(line_no) + ": expected key = value");
        }
        auto strip = [](std::string v) {
            const auto b = v.find_first_not_of(" \t\r");
            const auto e = v.find_last_not_of(" \t\r");
            v = b == std::string::npos ? std::string{} : v.substr(b, e - b + 1);
            if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
                v = v.substr(1, v.size() - 2);
            }
            return v;
        };
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        auto* opt = key == "config" ? nullptr : sub->get_option_no_throw("--" + key);
        if (opt == nullptr) {
            throw Error(ErrorCode::config, path + ": unknown field '" + key + "'");
        }
        if (opt->count() > 0) {
            continue;
        }
        try {
            opt->add_result(value);
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw Error(ErrorCode::config, path + ": field '" + key + "': " + e.what());
        }
    }
}

int exit_code_for(ErrorCode code) {
    return code == ErrorCode::insufficient_data ? kExitInsufficient : kExitInput;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Motion novelty scoring for 10-channel IMU traces", "novelty"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    RunConfig cfg;
    std::vector<std::string> inputs;

    auto* fit = app.add_subcommand("fit", "Fit normalization and LOF on training missions");
    add_run_options(fit, cfg);
    std::string run_config;
    const char* config_help = "Read options from a key = value file (flags override)";
    fit->add_option("--config", run_config, config_help);
    fit->add_option("missions", inputs, "IMU trace files (frame file alongside: <stem>.frames)")->required();

    auto* score = app.add_subcommand("score", "Write per-frame LOF and abnormality CSVs");
    add_run_options(score, cfg);
    score->add_option("--config", run_config, config_help);
    score->add_option("missions", inputs, "IMU trace files")->required();
    bool dump_features = false;
    score->add_flag("--features", dump_features, "Also write raw feature vectors to <stem>.features.csv");

    std::vector<std::string> normal;
    std::vector<std::string> abnormal;
    std::string manifest;
    auto* eval = app.add_subcommand("eval", "Flag rates and abnormality ranges for labeled missions");
    add_run_options(eval, cfg);
    eval->add_option("--config", run_config, config_help);
    eval->add_option("--normal", normal, "Missions labeled normal");
    eval->add_option("--abnormal", abnormal, "Missions labeled abnormal");
    eval->add_option("--manifest", manifest, "File of '<label> <path>' lines");
    eval->add_option("missions", inputs, "Unlabeled missions (rejected)");

    std::string scenario;
    auto* synth = app.add_subcommand("synth", "Generate synthetic normal and flip missions");
    add_run_options(synth, cfg, false);
    synth->add_option("--config,--scenario", scenario, "Scenario file of key = value lines");

    std::size_t bench_n = 5000;
    std::size_t bench_d = 160;
    std::size_t repetitions = 200;
    double budget_ms = 1000.0 / 30.0;
    auto* bench = app.add_subcommand("bench", "Single-frame scoring latency against the frame budget");
    add_run_options(bench, cfg);
    bench->add_option("--n", bench_n, "Rows of the synthetic model")->capture_default_str();
    bench->add_option("--d", bench_d, "Feature dimension of the synthetic model")->capture_default_str();
    bench->add_option("--repetitions", repetitions, "Timed frames")->capture_default_str();
    bench->add_option("--budget-ms", budget_ms, "Per-frame budget")->capture_default_str();
    bench->add_option("--config", run_config, config_help);

    auto* plot = app.add_subcommand("plot", "Render score CSVs as an SVG line chart");
    add_run_options(plot, cfg, false);
    plot->add_option("scores", inputs, "Score CSV files, plotted in order")->required();

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("novelty");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) {
        argv.push_back(a.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInput;
    }

    try {
        if (!run_config.empty()) {
            for (auto* sub : {fit, score, eval, bench}) {
                if (*sub) {
                    apply_config_file(sub, run_config);
                }
            }
        }
        if (*fit) {
            return cmd_fit(cfg, inputs, out, err);
        }
        if (*score) {
            return cmd_score(cfg, inputs, dump_features, out, err);
        }
        if (*eval) {
            return cmd_eval(cfg, normal, abnormal, inputs, manifest, out, err);
        }
        if (*synth) {
            return cmd_synth(cfg, scenario, synth->count("--seed") > 0, out);
        }
        if (*bench) {
            return cmd_bench(cfg, bench_n, bench_d, repetitions, budget_ms, out);
        }
        if (*plot) {
            return cmd_plot(cfg, inputs, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}

} // namespace novelty::cli
