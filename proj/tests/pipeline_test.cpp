#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "seqvis/dataset.hpp"
#include "seqvis/errors.hpp"
#include "seqvis/pipeline.hpp"
#include "seqvis/results_io.hpp"

using namespace seqvis;
namespace fs = std::filesystem;

namespace {

ScenarioConfig small_benchmark(int videos = 4) {
    ScenarioConfig cfg;
    cfg.video_count = videos;
    cfg.frames_per_video = 12;
    cfg.instances_min = 2;
    cfg.instances_max = 3;
    cfg.occluder_probability = 0.5;
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("oracle detector and propagator reach perfect scores") {
    const VideoDataset ds = generate_dataset(small_benchmark());
    RunConfig cfg;
    const RunOutput out = run_pipeline(ds, cfg);
    REQUIRE(out.has_ground_truth);
    CHECK(out.report.ap == 1.0);
    CHECK(out.report.j_mean == 1.0);
    CHECK(out.report.f_mean >= 0.99);
}

TEST_CASE("pipeline is deterministic across runs and thread counts") {
    const VideoDataset ds = generate_dataset(small_benchmark());
    RunConfig cfg;
    cfg.propagator = "translation";
    cfg.detector = "oracle";
    cfg.threads = 1;
    const std::string once = results_to_json(run_pipeline(ds, cfg).results);
    const std::string twice = results_to_json(run_pipeline(ds, cfg).results);
    CHECK(once == twice);
    cfg.threads = 8;
    const std::string wide = results_to_json(run_pipeline(ds, cfg).results);
    CHECK(once == wide);
}

TEST_CASE("single key frame misses late entries, more keys recover them") {
    ScenarioConfig scen = small_benchmark(3);
    scen.frames_per_video = 24;
    scen.late_entry_probability = 1.0;
    scen.occluder_probability = 0.0;
    const VideoDataset ds = generate_dataset(scen);

    RunConfig cfg;
    cfg.key_frames = 1;
    const RunOutput k1 = run_pipeline(ds, cfg);
    // Nothing is visible at frame 0, so no sequences at all.
    CHECK(k1.results.entries.empty());

    cfg.key_frames = 4;
    const RunOutput k4 = run_pipeline(ds, cfg);
    CHECK(k4.report.ap == 1.0);
}

TEST_CASE("category-aware reduction never lowers AP on the perturbed oracle") {
    const VideoDataset ds = generate_dataset(small_benchmark(6));
    RunConfig cfg;
    cfg.perturb_radius = 1;
    cfg.score_noise = 0.3;
    cfg.seed = 5;
    const RunOutput plain = run_pipeline(ds, cfg);
    cfg.category_aware = true;
    const RunOutput aware = run_pipeline(ds, cfg);
    CHECK(aware.report.ap >= plain.report.ap);
}

TEST_CASE("config validation") {
    RunConfig cfg;
    cfg.key_frames = 0;
    CHECK_THROWS_AS(cfg.validate(), config_error);
    cfg = {};
    cfg.theta = 0.0;
    CHECK_THROWS_AS(cfg.validate(), config_error);
    cfg = {};
    cfg.theta = 1.5;
    CHECK_THROWS_AS(cfg.validate(), config_error);
    cfg = {};
    cfg.detector = "neural";
    CHECK_THROWS_AS(cfg.validate(), config_error);
    cfg = {};
    cfg.propagator = "flow";
    CHECK_THROWS_AS(cfg.validate(), config_error);
    cfg = {};
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("report tables render perfect and empty runs") {
    EvalReport perfect;
    perfect.ap = perfect.ap50 = perfect.ap75 = perfect.ar1 = perfect.ar10 = perfect.ar100 = 1.0;
    perfect.j_mean = perfect.f_mean = perfect.jf = 1.0;
    const std::string table = format_report_table(perfect);
    CHECK(table.find(" 1.000  1.000  1.000  1.000  1.000  1.000  1.000  1.000") !=
          std::string::npos);

    const std::string zeros = format_report_table(EvalReport{});
    CHECK(zeros.find(" 0.000") != std::string::npos);
}

TEST_CASE("a key-frame sweep lands in one csv row per K") {
    ScenarioConfig scen = small_benchmark(3);
    scen.frames_per_video = 24;
    scen.late_entry_probability = 0.5;
    const VideoDataset ds = generate_dataset(scen);
    std::vector<std::pair<std::string, EvalReport>> rows;
    double ap_at_1 = -1.0, best_ap = -1.0;
    for (int k : {1, 2, 4, 6, 8}) {
        RunConfig cfg;
        cfg.key_frames = k;
        const RunOutput out = run_pipeline(ds, cfg);
        rows.emplace_back("K=" + std::to_string(k), out.report);
        if (k == 1) ap_at_1 = out.report.ap;
        best_ap = std::max(best_ap, out.report.ap);
    }
    const std::string csv = format_report_csv(rows);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);  // header + 5 rows
    CHECK(csv.find("K=1,") != std::string::npos);
    CHECK(csv.find("K=8,") != std::string::npos);
    // More key frames recover the late entries this scenario hides from K=1.
    CHECK(best_ap > ap_at_1);
}

TEST_CASE("results json round trip") {
    const VideoDataset ds = generate_dataset(small_benchmark(2));
    RunConfig cfg;
    const RunOutput out = run_pipeline(ds, cfg);
    const fs::path path = fs::temp_directory_path() / "seqvis_results_roundtrip.json";
    save_results(out.results, path.string());
    const ResultsFile loaded = load_results(path.string());
    CHECK(results_to_json(loaded) == results_to_json(out.results));
}

#ifdef SEQVIS_CLI_PATH
TEST_CASE("command line front door") {
    const fs::path dir = fs::temp_directory_path() / "seqvis_cli_smoke";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string cli = SEQVIS_CLI_PATH;
    const std::string dataset = (dir / "data").string();

    auto run = [&](const std::string& args) {
        const std::string cmd = cli + " " + args + " > " + (dir / "out.txt").string() + " 2>&1";
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    };

    CHECK(run("generate --out " + dataset + " --videos 2 --frames 8 --seed 3") == 0);
    CHECK(run("run --dataset " + dataset + " --out " + (dir / "results.json").string() +
              " --k 2 --threads 2") == 0);
    CHECK(run("eval --dataset " + dataset + " --results " + (dir / "results.json").string() +
              " --out " + (dir / "report.json").string()) == 0);
    CHECK(run("reduce --in " + (dir / "results.json").string() + " --out " +
              (dir / "reduced.json").string() + " --theta 0.5 --category-aware") == 0);
    CHECK(run("report " + (dir / "report.json").string() + " --csv " +
              (dir / "sweep.csv").string()) == 0);
    CHECK(slurp(dir / "sweep.csv").find("K=2") != std::string::npos);

    // Exit code 2 for config errors, 3 for data errors.
    CHECK(run("run --dataset " + dataset + " --theta 0") == 2);
    CHECK(run("run --dataset " + (dir / "nowhere").string()) == 3);
    CHECK(run("eval --dataset " + dataset + " --results " + (dir / "missing.json").string()) == 3);
}
#endif
