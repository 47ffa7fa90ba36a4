#pragma once

#include <vector>

#include "seqvis/rle.hpp"

namespace seqvis {

// Per-class detection scores, one entry per category, each in [0, 1].
using ClassScoreVector = std::vector<double>;

enum class Provenance { kDetected, kPropagatedForward, kPropagatedBackward };

// One candidate instance track: a mask and a class-score vector for every
// frame of the video, generated from one key frame and one detection slot.
struct SequenceProposal {
    int key_frame = 0;  // frame index where this sequence was detected
    int slot = 0;       // detection slot at that key frame
    std::vector<RleMask> masks;
    std::vector<ClassScoreVector> frame_scores;
    std::vector<Provenance> provenance;

    int frame_count() const { return static_cast<int>(masks.size()); }
    bool operator==(const SequenceProposal&) const = default;
};

struct SequenceScore {
    double score = 0.0;
    int class_index = 0;
};

// Mean score per class over all frames, then the max entry; ties on the max
// pick the lowest class index.
SequenceScore sequence_score(const SequenceProposal& s);

// Spatio-temporal IoU: frame-wise intersection and union areas are summed
// over the whole video first and divided once. This is not the mean of
// per-frame IoUs. Returns 0 when the union sum is 0.
double sequence_iou(const SequenceProposal& a, const SequenceProposal& b);

double sequence_iou_masks(const std::vector<RleMask>& a, const std::vector<RleMask>& b);

// Total 1-pixel count over all frames.
std::uint64_t sequence_area(const SequenceProposal& s);

}  // namespace seqvis
