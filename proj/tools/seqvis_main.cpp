#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "seqvis/dataset.hpp"
#include "seqvis/errors.hpp"
#include "seqvis/pipeline.hpp"
#include "seqvis/reduction.hpp"
#include "seqvis/results_io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace seqvis;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;

struct GenerateArgs {
    std::string out_dir;
    ScenarioConfig scenario;
};

struct RunArgs {
    std::string dataset_path;
    std::string out_path = "results.json";
    std::string report_path;
    std::string config_path;
    RunConfig config;
};

struct ReduceArgs {
    std::string in_path;
    std::string out_path = "reduced.json";
    double theta = 0.5;
    bool category_aware = false;
};

struct EvalArgs {
    std::string dataset_path;
    std::string results_path;
    std::string out_path = "report.json";
    std::string table_path;
};

struct ReportArgs {
    std::vector<std::string> inputs;
    std::string csv_path;
};

// JSON config file values apply wherever the command line left the default.
void apply_config_file(const CLI::App& app, const std::string& path, RunConfig& config) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error("config file parse error: " + std::string(e.what()));
    }
    const auto unset = [&](const std::string& flag) {
        const CLI::Option* opt = app.get_option_no_throw("--" + flag);
        return opt == nullptr || opt->count() == 0;
    };
    try {
        if (j.contains("key_frames") && unset("k")) config.key_frames = j["key_frames"];
        if (j.contains("theta") && unset("theta")) config.theta = j["theta"];
        if (j.contains("max_instances") && unset("max-instances"))
            config.max_instances = j["max_instances"];
        if (j.contains("score_threshold") && unset("score-threshold"))
            config.score_threshold = j["score_threshold"];
        if (j.contains("memory_stride") && unset("stride")) config.memory_stride = j["memory_stride"];
        if (j.contains("detector") && unset("detector")) config.detector = j["detector"];
        if (j.contains("propagator") && unset("propagator")) config.propagator = j["propagator"];
        if (j.contains("category_aware") && unset("category-aware"))
            config.category_aware = j["category_aware"];
        if (j.contains("seed") && unset("seed")) config.seed = j["seed"];
        if (j.contains("threads") && unset("threads")) config.threads = j["threads"];
        if (j.contains("perturb_radius") && unset("perturb-radius"))
            config.perturb_radius = j["perturb_radius"];
        if (j.contains("score_noise") && unset("score-noise")) config.score_noise = j["score_noise"];
        if (j.contains("search_radius") && unset("search-radius"))
            config.search_radius = j["search_radius"];
        if (j.contains("agreement_threshold") && unset("tau"))
            config.agreement_threshold = j["agreement_threshold"];
        if (j.contains("match_threshold") && unset("match-threshold"))
            config.match_threshold = j["match_threshold"];
    } catch (const nlohmann::json::exception& e) {
        throw config_error("config file: " + std::string(e.what()));
    }
}

int cmd_generate(const GenerateArgs& args) {
    const VideoDataset ds = generate_dataset(args.scenario);
    save_dataset(ds, args.out_dir);
    std::cout << "wrote " << ds.videos.size() << " videos, " << ds.annotations.size()
              << " instances to " << args.out_dir << "\n";
    return kExitOk;
}

int cmd_run(RunArgs& args, const CLI::App& run_app) {
    if (!args.config_path.empty()) apply_config_file(run_app, args.config_path, args.config);
    args.config.validate();
#ifdef _OPENMP
    omp_set_num_threads(args.config.threads);
#endif
    const VideoDataset dataset = load_dataset(args.dataset_path);
    const RunOutput output = run_pipeline(dataset, args.config);
    save_results(output.results, args.out_path);
    std::cout << "wrote " << output.results.entries.size() << " sequences to " << args.out_path
              << "\n";
    if (output.has_ground_truth) {
        std::cout << format_report_table(output.report);
        if (!args.report_path.empty()) {
            save_report(output.report, output.results.meta, args.report_path);
            std::cout << "wrote report to " << args.report_path << "\n";
        }
    }
    return kExitOk;
}

int cmd_reduce(const ReduceArgs& args) {
    if (args.theta <= 0.0 || args.theta > 1.0) throw config_error("theta must be in (0,1]");
    const ResultsFile input = load_results(args.in_path);

    std::map<int, std::vector<const ResultEntry*>> by_video;
    for (const ResultEntry& e : input.entries) by_video[e.video_id].push_back(&e);

    ResultsFile output;
    output.meta = input.meta;
    output.meta["reduce_theta"] = std::to_string(args.theta);
    for (auto& [vid, entries] : by_video) {
        std::vector<ScoredSequence> scored;
        for (const ResultEntry* e : entries) {
            scored.push_back({e->score, e->category_id, e->key_frame, e->slot, e->segmentations});
        }
        scored = drop_empty_scored(std::move(scored));
        std::vector<ScoredSequence> kept = sequence_nms(std::move(scored), args.theta);
        if (args.category_aware) kept = category_aware_reduce(std::move(kept), args.theta);
        for (ScoredSequence& s : kept) {
            ResultEntry e;
            e.video_id = vid;
            e.key_frame = s.key_frame;
            e.slot = s.slot;
            e.category_id = s.class_index;  // reduce reuses the stored category
            e.score = s.score;
            e.segmentations = std::move(s.masks);
            output.entries.push_back(std::move(e));
        }
    }
    save_results(output, args.out_path);
    std::cout << "kept " << output.entries.size() << " of " << input.entries.size()
              << " sequences -> " << args.out_path << "\n";
    return kExitOk;
}

int cmd_eval(const EvalArgs& args) {
    const VideoDataset dataset = load_dataset(args.dataset_path);
    const ResultsFile results = load_results(args.results_path);
    const EvalReport report = evaluate(to_predictions(results), dataset_ground_truth(dataset),
                                       dataset_video_ids(dataset));
    save_report(report, results.meta, args.out_path);
    const std::string table = format_report_table(report);
    std::cout << table;
    if (!args.table_path.empty()) {
        std::ofstream out(args.table_path);
        if (!out) throw data_error("cannot write table file " + args.table_path);
        out << table;
    }
    std::cout << "wrote report to " << args.out_path << "\n";
    return kExitOk;
}

int cmd_report(const ReportArgs& args) {
    std::vector<std::pair<std::string, EvalReport>> rows;
    for (const std::string& path : args.inputs) {
        std::map<std::string, std::string> meta;
        const EvalReport r = load_report(path, &meta);
        std::string label = std::filesystem::path(path).stem().string();
        if (meta.count("key_frames")) label = "K=" + meta["key_frames"];
        rows.emplace_back(label, r);
        std::cout << label << "\n" << format_report_table(r);
    }
    if (!args.csv_path.empty()) {
        std::ofstream out(args.csv_path);
        if (!out) throw data_error("cannot write csv file " + args.csv_path);
        out << format_report_csv(rows);
        std::cout << "wrote csv to " << args.csv_path << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"seqvis: sequence-proposal video instance segmentation over mask sequences"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "generate a synthetic benchmark dataset");
    generate->add_option("--out", gen.out_dir, "output directory")->required();
    generate->add_option("--videos", gen.scenario.video_count, "number of videos");
    generate->add_option("--frames", gen.scenario.frames_per_video, "frames per video");
    generate->add_option("--width", gen.scenario.width, "frame width");
    generate->add_option("--height", gen.scenario.height, "frame height");
    generate->add_option("--instances-min", gen.scenario.instances_min, "min instances per video");
    generate->add_option("--instances-max", gen.scenario.instances_max, "max instances per video");
    generate->add_option("--occluder-prob", gen.scenario.occluder_probability,
                         "probability of an aimed occluder per video");
    generate->add_option("--late-entry-prob", gen.scenario.late_entry_probability,
                         "probability an instance first appears after the video midpoint");
    generate->add_option("--seed", gen.scenario.rng_seed, "generator seed");

    RunArgs run;
    CLI::App* run_app = app.add_subcommand("run", "run the full pipeline on a dataset");
    run_app->add_option("--dataset", run.dataset_path, "dataset directory or json")->required();
    run_app->add_option("--out", run.out_path, "results json path");
    run_app->add_option("--report", run.report_path, "also write the eval report json here");
    run_app->add_option("--config", run.config_path, "json config file (flags take precedence)");
    run_app->add_option("--k", run.config.key_frames, "number of key frames");
    run_app->add_option("--theta", run.config.theta, "sequence NMS IoU threshold");
    run_app->add_option("--max-instances", run.config.max_instances, "max detections per key frame");
    run_app->add_option("--score-threshold", run.config.score_threshold, "detection score cutoff");
    run_app->add_option("--stride", run.config.memory_stride, "memory pool update stride");
    run_app->add_option("--detector", run.config.detector, "oracle | components");
    run_app->add_option("--propagator", run.config.propagator, "oracle | translation");
    run_app->add_flag("--category-aware", run.config.category_aware,
                      "apply category-aware reduction after NMS");
    run_app->add_option("--seed", run.config.seed, "seed for detector perturbation");
    run_app->add_option("--threads", run.config.threads, "video-level parallelism degree");
    run_app->add_option("--perturb-radius", run.config.perturb_radius,
                        "oracle detector erode/dilate radius");
    run_app->add_option("--score-noise", run.config.score_noise,
                        "oracle detector score noise amplitude");
    run_app->add_option("--search-radius", run.config.search_radius,
                        "translation propagator search radius");
    run_app->add_option("--tau", run.config.agreement_threshold,
                        "translation propagator agreement threshold");
    run_app->add_option("--match-threshold", run.config.match_threshold,
                        "oracle propagator key-frame IoU match threshold");

    ReduceArgs reduce;
    CLI::App* reduce_app = app.add_subcommand("reduce", "sequence NMS on an existing results json");
    reduce_app->add_option("--in", reduce.in_path, "input results json")->required();
    reduce_app->add_option("--out", reduce.out_path, "output results json");
    reduce_app->add_option("--theta", reduce.theta, "IoU threshold");
    reduce_app->add_flag("--category-aware", reduce.category_aware,
                         "also reduce within each category");

    EvalArgs eval;
    CLI::App* eval_app = app.add_subcommand("eval", "evaluate results against a dataset");
    eval_app->add_option("--dataset", eval.dataset_path, "dataset directory or json")->required();
    eval_app->add_option("--results", eval.results_path, "results json")->required();
    eval_app->add_option("--out", eval.out_path, "report json path");
    eval_app->add_option("--table", eval.table_path, "also write the plain-text table here");

    ReportArgs report;
    CLI::App* report_app = app.add_subcommand("report", "format report json files as tables/csv");
    report_app->add_option("inputs", report.inputs, "report json files")->required();
    report_app->add_option("--csv", report.csv_path, "write one csv row per report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (generate->parsed()) return cmd_generate(gen);
        if (run_app->parsed()) return cmd_run(run, *run_app);
        if (reduce_app->parsed()) return cmd_reduce(reduce);
        if (eval_app->parsed()) return cmd_eval(eval);
        if (report_app->parsed()) return cmd_report(report);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitOk;
}
