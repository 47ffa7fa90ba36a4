// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "seqvis/dataset.hpp"
#include "seqvis/metrics.hpp"
#include "seqvis/pipeline.hpp"
#include "seqvis/reduction.hpp"
#include "seqvis/results_io.hpp"
#include "seqvis/rng.hpp"
#include "seqvis/soft_agg.hpp"
#include "seqvis/soft_iou_loss.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"

using namespace seqvis;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
    std::printf("%s [%2d] %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

double elapsed(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::pair<int, int>> nms_tags(const std::vector<ScoredSequence>& kept) {
    std::vector<std::pair<int, int>> out;
    for (const ScoredSequence& s : kept) out.emplace_back(s.key_frame, s.slot);
    return out;
}

// 1. Sequence NMS vs brute-force greedy reference: 1000 random sets of <= 12
// sequences over 8x8x5 videos, exact set equality, under 10 seconds.
void criterion_1() {
    const auto start = Clock::now();
    Rng rng(1001);
    int mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<ScoredSequence> seqs;
        const int n = static_cast<int>(rng.uniform_int(1, 12));
        for (int i = 0; i < n; ++i) {
            seqs.push_back(testgen::random_scored_sequence(
                rng, static_cast<int>(rng.uniform_int(0, 4)), i, 5, 8, 8));
        }
        seqs = drop_empty_scored(std::move(seqs));
        const double theta = rng.uniform(0.05, 0.95);
        if (nms_tags(sequence_nms(seqs, theta)) != reference::brute_sequence_nms(seqs, theta)) {
            ++mismatches;
        }
    }
    const double secs = elapsed(start);
    char detail[128];
    std::snprintf(detail, sizeof(detail), "1000 sets, %d mismatches, %.1fs", mismatches, secs);
    report(1, mismatches == 0 && secs < 10.0, "sequence NMS equals brute-force greedy reference",
           detail);
}

// 2. sequence_iou vs voxel brute force on 1000 random pairs; the 4/20 worked
// example reproduces exactly.
void criterion_2() {
    Rng rng(1002);
    int mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int frames = static_cast<int>(rng.uniform_int(1, 5));
        const auto a = testgen::random_track(rng, frames, 8, 8);
        const auto b = testgen::random_track(rng, frames, 8, 8);
        if (sequence_iou_masks(a, b) != reference::brute_sequence_iou(a, b)) ++mismatches;
    }

    Bitmap left(4, 4), top(4, 4);
    for (int r = 0; r < 4; ++r) left.at(r, 0) = left.at(r, 1) = 1;
    for (int c = 0; c < 4; ++c) top.at(0, c) = top.at(1, c) = 1;
    const std::vector<RleMask> sa = {rle_encode(left), rle_encode(left)};
    const std::vector<RleMask> sb = {rle_encode(top), rle_empty(4, 4)};
    const bool example_ok = sequence_iou_masks(sa, sb) == 0.2;

    char detail[128];
    std::snprintf(detail, sizeof(detail), "1000 pairs, %d mismatches, 4/20 example %s", mismatches,
                  example_ok ? "exact" : "WRONG");
    report(2, mismatches == 0 && example_ok, "sequence IoU equals voxel brute force", detail);
}

// 3. soft_aggregate sums to 1 within 1e-9 on random map sets; the two-instance
// worked example reproduces to 4 decimal places.
void criterion_3() {
    Rng rng(1003);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        ProbMapSet maps;
        maps.height = maps.width = 32;
        const int o = static_cast<int>(rng.uniform_int(1, 5));
        for (int i = 0; i < o; ++i) {
            ProbGrid g(32, 32);
            for (auto& v : g.data) v = rng.uniform();
            maps.maps.push_back(std::move(g));
        }
        const auto out = soft_aggregate(maps);
        for (size_t px = 0; px < out[0].data.size(); ++px) {
            double sum = 0.0;
            for (const auto& g : out) sum += g.data[px];
            worst = std::max(worst, std::abs(sum - 1.0));
        }
    }

    ProbMapSet example{1, 1, {ProbGrid(1, 1, 0.8), ProbGrid(1, 1, 0.2)}};
    const auto out = soft_aggregate(example);
    const bool example_ok = std::abs(out[0].at(0, 0) - 0.0429) < 5e-5 &&
                            std::abs(out[1].at(0, 0) - 0.9008) < 5e-5 &&
                            std::abs(out[2].at(0, 0) - 0.0563) < 5e-5;

    char detail[128];
    std::snprintf(detail, sizeof(detail), "worst |sum-1| = %.2e, worked example %s", worst,
                  example_ok ? "to 4dp" : "WRONG");
    report(3, worst < 1e-9 && example_ok, "soft aggregation normalizes per pixel", detail);
}

// 4. L(GT,GT) = 0 exactly; analytic gradient vs central differences with
// relative error < 1e-4 at h = 1e-6 on 100 non-tied random configurations.
void criterion_4() {
    Rng rng(1004);
    SoftMaskSet exact;
    exact.height = exact.width = 8;
    for (int o = 0; o < 3; ++o) {
        Bitmap gt = testgen::random_bitmap(rng, 8, 8, 0.4);
        ProbGrid pred(8, 8);
        for (size_t i = 0; i < gt.data.size(); ++i) pred.data[i] = gt.data[i] ? 1.0 : 0.0;
        exact.ground_truth.push_back(std::move(gt));
        exact.predictions.push_back(std::move(pred));
    }
    const bool zero_ok = soft_iou_loss(exact) == 0.0;

    double worst_rel = 0.0;
    int checked = 0;
    while (checked < 100) {
        SoftMaskSet s;
        s.height = s.width = 6;
        const int o_count = static_cast<int>(rng.uniform_int(1, 3));
        for (int o = 0; o < o_count; ++o) {
            Bitmap gt = testgen::random_bitmap(rng, 6, 6, 0.4);
            ProbGrid pred(6, 6);
            for (auto& v : pred.data) v = rng.uniform(0.05, 0.95);
            s.ground_truth.push_back(std::move(gt));
            s.predictions.push_back(std::move(pred));
        }
        const int o = static_cast<int>(rng.uniform_int(0, o_count - 1));
        const int r = static_cast<int>(rng.uniform_int(0, 5));
        const int c = static_cast<int>(rng.uniform_int(0, 5));
        const double analytic = soft_iou_loss_gradient(s, o, r, c);
        if (std::abs(analytic) < 1e-9) continue;
        const double fd = finite_difference_gradient(s, o, r, c, 1e-6);
        worst_rel = std::max(worst_rel, std::abs(fd - analytic) / std::abs(analytic));
        ++checked;
    }

    char detail[128];
    std::snprintf(detail, sizeof(detail), "L(GT,GT)=%s, worst gradient rel err %.2e",
                  zero_ok ? "0" : "nonzero", worst_rel);
    report(4, zero_ok && worst_rel < 1e-4, "soft IoU loss and gradient oracle agree", detail);
}

// 5. Oracle end to end on the default 20-video benchmark: AP and J exactly 1,
// F >= 0.99, under 60 seconds single-threaded.
void criterion_5() {
    const VideoDataset ds = generate_dataset(ScenarioConfig{});
    RunConfig cfg;  // oracle detector + oracle propagator
    cfg.threads = 1;
    const auto start = Clock::now();
    const RunOutput out = run_pipeline(ds, cfg);
    const double secs = elapsed(start);
    const bool ok = out.has_ground_truth && out.report.ap == 1.0 && out.report.j_mean == 1.0 &&
                    out.report.f_mean >= 0.99 && secs < 60.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail), "AP=%.4f J=%.4f F=%.4f, %.1fs single-threaded",
                  out.report.ap, out.report.j_mean, out.report.f_mean, secs);
    report(5, ok, "oracle end-to-end is exact on the default benchmark", detail);
}

// 6. Translation propagator end to end with unperturbed oracle detection:
// J&F >= 0.90 and AP@50 >= 0.90 on the same benchmark.
void criterion_6() {
    const VideoDataset ds = generate_dataset(ScenarioConfig{});
    RunConfig cfg;
    cfg.propagator = "translation";
    cfg.threads = 1;
    const auto start = Clock::now();
    const RunOutput out = run_pipeline(ds, cfg);
    const double secs = elapsed(start);
    const bool ok = out.report.jf >= 0.90 && out.report.ap50 >= 0.90;
    char detail[160];
    std::snprintf(detail, sizeof(detail), "J&F=%.4f AP@50=%.4f, %.1fs", out.report.jf,
                  out.report.ap50, secs);
    report(6, ok, "translation propagator end-to-end clears 0.90", detail);
}

// 7. K ablation on late-entry videos: K=1 leaves every late instance
// unrecovered, K=4 recovers all of them with the oracle propagator.
void criterion_7() {
    ScenarioConfig scen;
    scen.video_count = 8;
    scen.late_entry_probability = 1.0;
    scen.occluder_probability = 0.0;
    const VideoDataset ds = generate_dataset(scen);

    const auto recall_of_late = [&](int k) {
        RunConfig cfg;
        cfg.key_frames = k;
        const RunOutput out = run_pipeline(ds, cfg);
        int hit = 0, total = 0;
        for (const Annotation& a : ds.annotations) {
            ++total;
            for (const ResultEntry& e : out.results.entries) {
                if (e.video_id != a.video_id || e.category_id != a.category_id) continue;
                if (sequence_iou_masks(e.segmentations, a.segmentations) >= 0.5) {
                    ++hit;
                    break;
                }
            }
        }
        return std::make_pair(hit, total);
    };

    const auto [hit1, total1] = recall_of_late(1);
    const auto [hit4, total4] = recall_of_late(4);
    char detail[128];
    std::snprintf(detail, sizeof(detail), "K=1 recall %d/%d, K=4 recall %d/%d", hit1, total1, hit4,
                  total4);
    report(7, hit1 == 0 && hit4 == total4 && total4 > 0,
           "late instances need a later key frame", detail);
}

// 8. Metric evaluators vs exhaustive references on tiny instances, plus the
// hand-computed AP example.
void criterion_8() {
    Rng rng(1008);
    int ap_mismatch = 0, jf_mismatch = 0, jf_compared = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<GroundTruthSequence> gts;
        std::vector<PredictedSequence> preds;
        const int n_gt = static_cast<int>(rng.uniform_int(1, 2));
        const int n_pred = static_cast<int>(rng.uniform_int(0, 3));
        for (int g = 0; g < n_gt; ++g) {
            gts.push_back({0, 1 + static_cast<int>(rng.uniform_int(0, 1)),
                           testgen::random_track(rng, 3, 8, 8, 0.2)});
        }
        for (int p = 0; p < n_pred; ++p) {
            preds.push_back({0, 1 + static_cast<int>(rng.uniform_int(0, 1)), rng.uniform(),
                             testgen::random_track(rng, 3, 8, 8, 0.2)});
        }
        const EvalReport mine = evaluate_ap_ar(preds, gts, {0});
        const EvalReport ref = reference::brute_evaluate_ap_ar(preds, gts);
        if (mine.ap != ref.ap || mine.ap50 != ref.ap50 || mine.ar1 != ref.ar1 ||
            mine.ar10 != ref.ar10 || mine.ar100 != ref.ar100) {
            ++ap_mismatch;
        }
    }
    for (int trial = 0; trial < 300 && jf_compared < 100; ++trial) {
        std::vector<GroundTruthSequence> gts;
        std::vector<PredictedSequence> preds;
        const int n_gt = static_cast<int>(rng.uniform_int(1, 6));
        const int n_pred = static_cast<int>(rng.uniform_int(0, 6));
        for (int g = 0; g < n_gt; ++g) {
            gts.push_back({0, 1, testgen::random_track(rng, 2, 8, 8, 0.15)});
        }
        for (int p = 0; p < n_pred; ++p) {
            preds.push_back({0, 1, rng.uniform(), testgen::random_track(rng, 2, 8, 8, 0.15)});
        }
        std::vector<std::vector<double>> weights(gts.size());
        for (size_t g = 0; g < gts.size(); ++g) {
            for (size_t p = 0; p < preds.size(); ++p) {
                weights[g].push_back(
                    0.5 * (track_region_similarity(preds[p].masks, gts[g].masks) +
                           track_boundary_accuracy(preds[p].masks, gts[g].masks, 1)));
            }
        }
        if (reference::has_near_tie(weights, 1e-9)) continue;
        ++jf_compared;
        const EvalReport mine = evaluate_jf(preds, gts, {0});
        const EvalReport ref = reference::brute_evaluate_jf(preds, gts, {0});
        if (mine.j_mean != ref.j_mean || mine.f_mean != ref.f_mean) ++jf_mismatch;
    }

    // Hand-computed example: AP@0.5 = 1.0, AP@0.85 = 0.0.
    Bitmap gt_b(1, 128), p1_b(1, 128), p2_b(1, 128);
    for (int c = 0; c < 100; ++c) gt_b.at(0, c) = 1;
    for (int c = 0; c < 80; ++c) p1_b.at(0, c) = 1;
    for (int c = 0; c < 30; ++c) p2_b.at(0, c) = 1;
    const std::vector<GroundTruthSequence> gts = {{0, 1, {rle_encode(gt_b)}}};
    const std::vector<PredictedSequence> preds = {{0, 1, 0.9, {rle_encode(p1_b)}},
                                                  {0, 1, 0.8, {rle_encode(p2_b)}}};
    const EvalReport ex = evaluate_ap_ar(preds, gts, {0});
    // AP per threshold is monotone; ap50 = 1 with mean 0.7 pins AP@0.85 = 0.
    const bool example_ok = ex.ap50 == 1.0 && std::abs(ex.ap - 0.7) < 1e-12;

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "AP mismatches %d/200, J&F mismatches %d/%d, worked example %s", ap_mismatch,
                  jf_mismatch, jf_compared, example_ok ? "ok" : "WRONG");
    report(8, ap_mismatch == 0 && jf_mismatch == 0 && jf_compared >= 50 && example_ok,
           "evaluators equal the exhaustive references", detail);
}

// 9. Byte-identical results at parallelism 1 and 8, two runs each.
void criterion_9() {
    const VideoDataset ds = generate_dataset(ScenarioConfig{});
    RunConfig cfg;
    cfg.propagator = "translation";
    cfg.seed = 42;
    cfg.threads = 1;
    const std::string a = results_to_json(run_pipeline(ds, cfg).results);
    const std::string b = results_to_json(run_pipeline(ds, cfg).results);
    cfg.threads = 8;
    const std::string c = results_to_json(run_pipeline(ds, cfg).results);
    const std::string d = results_to_json(run_pipeline(ds, cfg).results);
    const bool ok = a == b && b == c && c == d;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%zu bytes, threads {1,1,8,8} %s", a.size(),
                  ok ? "identical" : "DIFFER");
    report(9, ok, "results are byte-identical across runs and thread counts", detail);
}

// 10. Category-aware reduction never lowers AP on the perturbed-oracle
// benchmark.
void criterion_10() {
    const VideoDataset ds = generate_dataset(ScenarioConfig{});
    RunConfig cfg;
    cfg.perturb_radius = 1;
    cfg.score_noise = 0.3;
    cfg.seed = 7;
    cfg.threads = 1;
    const RunOutput plain = run_pipeline(ds, cfg);
    cfg.category_aware = true;
    const RunOutput aware = run_pipeline(ds, cfg);
    char detail[128];
    std::snprintf(detail, sizeof(detail), "AP %.4f -> %.4f", plain.report.ap, aware.report.ap);
    report(10, aware.report.ap >= plain.report.ap, "category-aware reduction does not lower AP",
           detail);
}

}  // namespace

int main() {
    const auto start = Clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d of 10 criteria passed in %.1fs\n", 10 - failures, elapsed(start));
    return failures;
}
