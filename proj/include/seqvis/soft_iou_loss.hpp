#pragma once

#include <vector>

#include "seqvis/grid.hpp"

namespace seqvis {

// Paired soft predictions and binary targets for a set of instances sharing
// one frame size.
struct SoftMaskSet {
    int height = 0;
    int width = 0;
    std::vector<ProbGrid> predictions;  // values in [0, 1]
    std::vector<Bitmap> ground_truth;   // binary

    int instance_count() const { return static_cast<int>(predictions.size()); }
};

// L = 1 - (1/O) * sum_o [ sum_p min(gt, pred) / sum_p max(gt, pred) ].
// Every instance contributes with weight 1/O regardless of its pixel area.
// An instance whose target and prediction are both identically zero
// contributes ratio 1 (no loss for correctly predicted absence).
double soft_iou_loss(const SoftMaskSet& s);

// Closed-form d(loss)/d(prediction[instance] at (row, col)), valid away from
// ties where pred == gt at that pixel.
double soft_iou_loss_gradient(const SoftMaskSet& s, int instance, int row, int col);

// Central difference (L(+h) - L(-h)) / 2h with respect to one prediction
// value, evaluating soft_iou_loss as a black box. Requires the prediction at
// that pixel to lie in (h, 1-h).
double finite_difference_gradient(const SoftMaskSet& s, int instance, int row, int col, double h);

}  // namespace seqvis
