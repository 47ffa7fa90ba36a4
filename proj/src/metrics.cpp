#include "seqvis/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "seqvis/assignment.hpp"
#include "seqvis/errors.hpp"
#include "seqvis/sequence.hpp"

namespace seqvis {

const std::vector<double>& ap_iou_thresholds() {
    static const std::vector<double> kThresholds = {0.50, 0.55, 0.60, 0.65, 0.70,
                                                    0.75, 0.80, 0.85, 0.90, 0.95};
    return kThresholds;
}

int default_boundary_tolerance(int height, int width) {
    const double diagonal = std::sqrt(static_cast<double>(height) * height +
                                      static_cast<double>(width) * width);
    return static_cast<int>(std::ceil(0.008 * diagonal));
}

double boundary_f_measure(const RleMask& prediction, const RleMask& ground_truth, int tolerance) {
    const bool pred_empty = rle_is_empty(prediction);
    const bool gt_empty = rle_is_empty(ground_truth);
    if (pred_empty && gt_empty) return 1.0;
    if (pred_empty || gt_empty) return 0.0;

    const Bitmap pred_contour = mask_contour(rle_decode(prediction));
    const Bitmap gt_contour = mask_contour(rle_decode(ground_truth));
    const Bitmap pred_band = chebyshev_dilate(pred_contour, tolerance);
    const Bitmap gt_band = chebyshev_dilate(gt_contour, tolerance);

    std::uint64_t pred_total = 0, pred_hit = 0, gt_total = 0, gt_hit = 0;
    for (size_t i = 0; i < pred_contour.data.size(); ++i) {
        if (pred_contour.data[i]) {
            ++pred_total;
            if (gt_band.data[i]) ++pred_hit;
        }
        if (gt_contour.data[i]) {
            ++gt_total;
            if (pred_band.data[i]) ++gt_hit;
        }
    }
    const double precision = static_cast<double>(pred_hit) / static_cast<double>(pred_total);
    const double recall = static_cast<double>(gt_hit) / static_cast<double>(gt_total);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

double track_region_similarity(const std::vector<RleMask>& prediction,
                               const std::vector<RleMask>& ground_truth) {
    if (prediction.size() != ground_truth.size()) {
        throw data_error("track_region_similarity: frame count mismatch");
    }
    double sum = 0.0;
    for (size_t t = 0; t < prediction.size(); ++t) {
        const bool pe = rle_is_empty(prediction[t]);
        const bool ge = rle_is_empty(ground_truth[t]);
        sum += (pe && ge) ? 1.0 : frame_iou(prediction[t], ground_truth[t]);
    }
    return sum / static_cast<double>(prediction.size());
}

double track_boundary_accuracy(const std::vector<RleMask>& prediction,
                               const std::vector<RleMask>& ground_truth, int tolerance) {
    if (prediction.size() != ground_truth.size()) {
        throw data_error("track_boundary_accuracy: frame count mismatch");
    }
    double sum = 0.0;
    for (size_t t = 0; t < prediction.size(); ++t) {
        sum += boundary_f_measure(prediction[t], ground_truth[t], tolerance);
    }
    return sum / static_cast<double>(prediction.size());
}

namespace {

void check_video_ids(const std::vector<PredictedSequence>& predictions,
                     const std::vector<int>& video_ids) {
    const std::set<int> known(video_ids.begin(), video_ids.end());
    for (const PredictedSequence& p : predictions) {
        if (!known.count(p.video_id)) {
            throw data_error("prediction references unknown video " + std::to_string(p.video_id));
        }
    }
}

// Prediction indices ordered by score descending; stable on ties.
std::vector<int> rank_order(const std::vector<PredictedSequence>& preds,
                            const std::vector<int>& subset) {
    std::vector<int> order = subset;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return preds[a].score > preds[b].score; });
    return order;
}

// Greedy matching at one threshold: returns per-rank TP flags.
std::vector<char> match_tps(const std::vector<PredictedSequence>& preds,
                            const std::vector<int>& ranked,
                            const std::vector<GroundTruthSequence>& gts,
                            const std::vector<int>& gt_indices,
                            const std::map<std::pair<int, int>, double>& iou_cache,
                            double threshold) {
    std::vector<char> tp(ranked.size(), 0);
    std::set<int> matched;
    for (size_t r = 0; r < ranked.size(); ++r) {
        const int pi = ranked[r];
        int best_gt = -1;
        double best_iou = -1.0;
        for (int gi : gt_indices) {
            if (matched.count(gi)) continue;
            if (gts[gi].video_id != preds[pi].video_id) continue;
            const auto it = iou_cache.find({pi, gi});
            const double iou = it == iou_cache.end() ? 0.0 : it->second;
            if (iou > best_iou) {
                best_iou = iou;
                best_gt = gi;
            }
        }
        if (best_gt >= 0 && best_iou >= threshold) {
            tp[r] = 1;
            matched.insert(best_gt);
        }
    }
    return tp;
}

// Area under the interpolated (envelope) precision-recall curve.
double average_precision(const std::vector<char>& tp, int gt_count) {
    if (gt_count == 0) return 0.0;
    const int n = static_cast<int>(tp.size());
    std::vector<double> precision(n);
    int cum_tp = 0;
    for (int k = 0; k < n; ++k) {
        cum_tp += tp[k];
        precision[k] = static_cast<double>(cum_tp) / static_cast<double>(k + 1);
    }
    for (int k = n - 2; k >= 0; --k) precision[k] = std::max(precision[k], precision[k + 1]);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        if (tp[k]) sum += precision[k];
    }
    return sum / static_cast<double>(gt_count);
}

int count_tp(const std::vector<char>& tp) {
    int n = 0;
    for (char t : tp) n += t;
    return n;
}

}  // namespace

EvalReport evaluate_ap_ar(const std::vector<PredictedSequence>& predictions,
                          const std::vector<GroundTruthSequence>& ground_truth,
                          const std::vector<int>& video_ids) {
    check_video_ids(predictions, video_ids);
    EvalReport report;

    std::set<int> category_ids;
    for (const GroundTruthSequence& g : ground_truth) category_ids.insert(g.category_id);
    if (category_ids.empty()) return report;

    // Top-N prediction subsets per video (N highest scores, ties stable).
    const int kRecallBudgets[] = {1, 10, 100};
    std::map<int, std::vector<int>> per_video;
    for (size_t i = 0; i < predictions.size(); ++i) {
        per_video[predictions[i].video_id].push_back(static_cast<int>(i));
    }
    std::vector<std::set<int>> budget_sets(3);
    for (auto& [vid, indices] : per_video) {
        const std::vector<int> ranked = rank_order(predictions, indices);
        for (int b = 0; b < 3; ++b) {
            const int n = std::min<int>(kRecallBudgets[b], static_cast<int>(ranked.size()));
            for (int k = 0; k < n; ++k) budget_sets[b].insert(ranked[k]);
        }
    }

    double ap_sum = 0.0, ap50_sum = 0.0, ap75_sum = 0.0;
    double ar_sum[3] = {0.0, 0.0, 0.0};
    int cell_count = 0, cat_count = 0;

    for (int cat : category_ids) {
        std::vector<int> cat_preds;
        for (size_t i = 0; i < predictions.size(); ++i) {
            if (predictions[i].category_id == cat) cat_preds.push_back(static_cast<int>(i));
        }
        std::vector<int> cat_gts;
        for (size_t i = 0; i < ground_truth.size(); ++i) {
            if (ground_truth[i].category_id == cat) cat_gts.push_back(static_cast<int>(i));
        }
        const int gt_count = static_cast<int>(cat_gts.size());
        ++cat_count;

        const std::vector<int> ranked = rank_order(predictions, cat_preds);
        std::map<std::pair<int, int>, double> iou_cache;
        for (int pi : ranked) {
            for (int gi : cat_gts) {
                if (ground_truth[gi].video_id != predictions[pi].video_id) continue;
                iou_cache[{pi, gi}] =
                    sequence_iou_masks(predictions[pi].masks, ground_truth[gi].masks);
            }
        }

        for (double threshold : ap_iou_thresholds()) {
            const std::vector<char> tp =
                match_tps(predictions, ranked, ground_truth, cat_gts, iou_cache, threshold);
            const double ap = average_precision(tp, gt_count);
            ap_sum += ap;
            if (threshold == 0.50) ap50_sum += ap;
            if (threshold == 0.75) ap75_sum += ap;
            ++cell_count;

            for (int b = 0; b < 3; ++b) {
                std::vector<int> capped;
                for (int pi : ranked) {
                    if (budget_sets[b].count(pi)) capped.push_back(pi);
                }
                const std::vector<char> tp_b = match_tps(predictions, capped, ground_truth,
                                                         cat_gts, iou_cache, threshold);
                ar_sum[b] += static_cast<double>(count_tp(tp_b)) / static_cast<double>(gt_count);
            }
        }
    }

    report.ap = ap_sum / cell_count;
    report.ap50 = ap50_sum / cat_count;
    report.ap75 = ap75_sum / cat_count;
    report.ar1 = ar_sum[0] / cell_count;
    report.ar10 = ar_sum[1] / cell_count;
    report.ar100 = ar_sum[2] / cell_count;
    return report;
}

EvalReport evaluate_jf(const std::vector<PredictedSequence>& predictions,
                       const std::vector<GroundTruthSequence>& ground_truth,
                       const std::vector<int>& video_ids, int max_predictions) {
    check_video_ids(predictions, video_ids);
    EvalReport report;

    struct VideoResult {
        PerVideoJF summary;
        std::vector<double> j, f;  // one entry per GT sequence
    };
    std::vector<VideoResult> results(video_ids.size());

    const std::int64_t n_videos = static_cast<std::int64_t>(video_ids.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t v = 0; v < n_videos; ++v) {
        const int vid = video_ids[v];
        VideoResult& result = results[v];
        result.summary.video_id = vid;

        std::vector<int> pred_indices;
        for (size_t i = 0; i < predictions.size(); ++i) {
            if (predictions[i].video_id == vid) pred_indices.push_back(static_cast<int>(i));
        }
        std::vector<int> ranked = rank_order(predictions, pred_indices);
        if (static_cast<int>(ranked.size()) > max_predictions) ranked.resize(max_predictions);

        std::vector<int> gt_indices;
        for (size_t i = 0; i < ground_truth.size(); ++i) {
            if (ground_truth[i].video_id == vid) gt_indices.push_back(static_cast<int>(i));
        }
        result.summary.gt_count = static_cast<int>(gt_indices.size());
        if (gt_indices.empty()) continue;

        int tolerance = 1;
        if (!ground_truth[gt_indices[0]].masks.empty()) {
            const RleMask& first = ground_truth[gt_indices[0]].masks[0];
            tolerance = default_boundary_tolerance(first.height, first.width);
        }

        std::vector<std::vector<double>> j_mat(gt_indices.size()), f_mat(gt_indices.size());
        std::vector<std::vector<double>> weights(gt_indices.size());
        for (size_t g = 0; g < gt_indices.size(); ++g) {
            j_mat[g].resize(ranked.size());
            f_mat[g].resize(ranked.size());
            weights[g].resize(ranked.size());
            for (size_t p = 0; p < ranked.size(); ++p) {
                const auto& pm = predictions[ranked[p]].masks;
                const auto& gm = ground_truth[gt_indices[g]].masks;
                j_mat[g][p] = track_region_similarity(pm, gm);
                f_mat[g][p] = track_boundary_accuracy(pm, gm, tolerance);
                weights[g][p] = 0.5 * (j_mat[g][p] + f_mat[g][p]);
            }
        }

        result.j.assign(gt_indices.size(), 0.0);
        result.f.assign(gt_indices.size(), 0.0);
        if (!ranked.empty()) {
            const std::vector<int> gt_to_pred = max_weight_assignment(weights);
            for (size_t g = 0; g < gt_indices.size(); ++g) {
                if (gt_to_pred[g] >= 0) {
                    result.j[g] = j_mat[g][gt_to_pred[g]];
                    result.f[g] = f_mat[g][gt_to_pred[g]];
                }
            }
        }
        double js = 0.0, fs = 0.0;
        for (size_t g = 0; g < gt_indices.size(); ++g) {
            js += result.j[g];
            fs += result.f[g];
        }
        result.summary.j = js / static_cast<double>(gt_indices.size());
        result.summary.f = fs / static_cast<double>(gt_indices.size());
    }

    double j_sum = 0.0, f_sum = 0.0;
    int gt_total = 0;
    for (const VideoResult& r : results) {
        report.per_video.push_back(r.summary);
        for (size_t g = 0; g < r.j.size(); ++g) {
            j_sum += r.j[g];
            f_sum += r.f[g];
            ++gt_total;
        }
    }
    if (gt_total > 0) {
        report.j_mean = j_sum / gt_total;
        report.f_mean = f_sum / gt_total;
    }
    report.jf = 0.5 * (report.j_mean + report.f_mean);
    return report;
}

EvalReport evaluate(const std::vector<PredictedSequence>& predictions,
                    const std::vector<GroundTruthSequence>& ground_truth,
                    const std::vector<int>& video_ids) {
    EvalReport report = evaluate_ap_ar(predictions, ground_truth, video_ids);
    const EvalReport jf = evaluate_jf(predictions, ground_truth, video_ids);
    report.j_mean = jf.j_mean;
    report.f_mean = jf.f_mean;
    report.jf = jf.jf;
    report.per_video = jf.per_video;
    return report;
}

}  // namespace seqvis
