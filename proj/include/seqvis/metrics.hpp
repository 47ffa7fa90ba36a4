#pragma once

#include <string>
#include <vector>

#include "seqvis/rle.hpp"

namespace seqvis {

// One predicted instance sequence, already reduced and classified.
struct PredictedSequence {
    int video_id = 0;
    int category_id = 0;
    double score = 0.0;
    std::vector<RleMask> masks;
};

struct GroundTruthSequence {
    int video_id = 0;
    int category_id = 0;
    std::vector<RleMask> masks;
};

struct PerVideoJF {
    int video_id = 0;
    double j = 0.0;
    double f = 0.0;
    int gt_count = 0;
};

struct EvalReport {
    double ap = 0.0;    // mean over IoU thresholds 0.50:0.05:0.95 and categories
    double ap50 = 0.0;
    double ap75 = 0.0;
    double ar1 = 0.0;   // recall with the top-N predictions per video
    double ar10 = 0.0;
    double ar100 = 0.0;
    double j_mean = 0.0;
    double f_mean = 0.0;
    double jf = 0.0;    // (j_mean + f_mean) / 2
    std::vector<PerVideoJF> per_video;
};

// The 10 sequence-IoU thresholds 0.50, 0.55, ..., 0.95.
const std::vector<double>& ap_iou_thresholds();

// Default boundary tolerance for the F measure: ceil(0.008 * image diagonal).
int default_boundary_tolerance(int height, int width);

// Per-frame boundary F measure: precision is the fraction of predicted
// contour pixels within the GT contour's tolerance band, recall the converse,
// F their harmonic mean. Both-empty frames score 1, one-sided empty 0.
double boundary_f_measure(const RleMask& prediction, const RleMask& ground_truth, int tolerance);

// Region similarity between two tracks: mean over frames of mask IoU with
// both-empty frames counted as 1.
double track_region_similarity(const std::vector<RleMask>& prediction,
                               const std::vector<RleMask>& ground_truth);

// Boundary accuracy between two tracks: mean over frames of boundary F.
double track_boundary_accuracy(const std::vector<RleMask>& prediction,
                               const std::vector<RleMask>& ground_truth, int tolerance);

// Detection-style AP/AR over sequence IoU: per category and threshold,
// predictions sorted by score greedily match the unmatched same-video GT with
// the highest sequence IoU; a match counts as a true positive iff that IoU
// reaches the threshold. AP integrates the precision envelope over recall;
// AR@N restricts each video to its N highest-scoring predictions. Categories
// without GT are skipped. Throws data_error for predictions naming a video
// outside `video_ids`.
EvalReport evaluate_ap_ar(const std::vector<PredictedSequence>& predictions,
                          const std::vector<GroundTruthSequence>& ground_truth,
                          const std::vector<int>& video_ids);

// DAVIS-style J&F: per video the top-scoring predictions (at most
// max_predictions) are assigned to GT sequences by maximum-weight bipartite
// matching on (J+F)/2; unmatched GT scores 0. Reported means are over all GT
// sequences in the dataset.
EvalReport evaluate_jf(const std::vector<PredictedSequence>& predictions,
                       const std::vector<GroundTruthSequence>& ground_truth,
                       const std::vector<int>& video_ids, int max_predictions = 20);

// Runs both evaluators and merges the report.
EvalReport evaluate(const std::vector<PredictedSequence>& predictions,
                    const std::vector<GroundTruthSequence>& ground_truth,
                    const std::vector<int>& video_ids);

}  // namespace seqvis
