#include "seqvis/soft_iou_loss.hpp"

#include <algorithm>

#include "seqvis/errors.hpp"

namespace seqvis {

namespace {

struct MinMaxSums {
    double min_sum = 0.0;
    double max_sum = 0.0;
};

MinMaxSums instance_sums(const SoftMaskSet& s, int o) {
    MinMaxSums sums;
    const ProbGrid& pred = s.predictions[o];
    const Bitmap& gt = s.ground_truth[o];
    for (size_t px = 0; px < pred.data.size(); ++px) {
        const double g = gt.data[px] ? 1.0 : 0.0;
        const double m = pred.data[px];
        sums.min_sum += std::min(g, m);
        sums.max_sum += std::max(g, m);
    }
    return sums;
}

}  // namespace

double soft_iou_loss(const SoftMaskSet& s) {
    const int n = s.instance_count();
    if (n == 0) throw data_error("soft_iou_loss: no instances");
    if (static_cast<int>(s.ground_truth.size()) != n) {
        throw data_error("soft_iou_loss: prediction/ground-truth count mismatch");
    }
    double ratio_sum = 0.0;
    for (int o = 0; o < n; ++o) {
        const MinMaxSums sums = instance_sums(s, o);
        // 0/0: an absent instance predicted absent costs nothing.
        ratio_sum += sums.max_sum == 0.0 ? 1.0 : sums.min_sum / sums.max_sum;
    }
    return 1.0 - ratio_sum / n;
}

double soft_iou_loss_gradient(const SoftMaskSet& s, int instance, int row, int col) {
    const MinMaxSums sums = instance_sums(s, instance);
    const int n = s.instance_count();
    const bool gt_set = s.ground_truth[instance].at(row, col) != 0;
    if (sums.max_sum == 0.0) return 0.0;
    if (gt_set) {
        // min term moves with the prediction; max term is pinned at 1.
        return -1.0 / (n * sums.max_sum);
    }
    // max term moves with the prediction; min term is pinned at 0.
    return sums.min_sum / (n * sums.max_sum * sums.max_sum);
}

double finite_difference_gradient(const SoftMaskSet& s, int instance, int row, int col, double h) {
    SoftMaskSet plus = s;
    SoftMaskSet minus = s;
    plus.predictions[instance].at(row, col) += h;
    minus.predictions[instance].at(row, col) -= h;
    return (soft_iou_loss(plus) - soft_iou_loss(minus)) / (2.0 * h);
}

}  // namespace seqvis
