#include "seqvis/sequence.hpp"

#include "seqvis/errors.hpp"

namespace seqvis {

SequenceScore sequence_score(const SequenceProposal& s) {
    const int frames = s.frame_count();
    if (frames == 0 || s.frame_scores.empty()) throw data_error("sequence_score: empty sequence");
    const size_t classes = s.frame_scores[0].size();
    std::vector<double> mean(classes, 0.0);
    for (const ClassScoreVector& scores : s.frame_scores) {
        for (size_t c = 0; c < classes; ++c) mean[c] += scores[c];
    }
    SequenceScore best;
    best.score = -1.0;
    for (size_t c = 0; c < classes; ++c) {
        const double m = mean[c] / frames;
        if (m > best.score) {
            best.score = m;
            best.class_index = static_cast<int>(c);
        }
    }
    return best;
}

double sequence_iou_masks(const std::vector<RleMask>& a, const std::vector<RleMask>& b) {
    if (a.size() != b.size()) throw data_error("sequence_iou: frame count mismatch");
    std::uint64_t inter_sum = 0, union_sum = 0;
    for (size_t t = 0; t < a.size(); ++t) {
        const std::uint64_t inter = rle_intersection_area(a[t], b[t]);
        inter_sum += inter;
        union_sum += rle_area(a[t]) + rle_area(b[t]) - inter;
    }
    if (union_sum == 0) return 0.0;
    return static_cast<double>(inter_sum) / static_cast<double>(union_sum);
}

double sequence_iou(const SequenceProposal& a, const SequenceProposal& b) {
    return sequence_iou_masks(a.masks, b.masks);
}

std::uint64_t sequence_area(const SequenceProposal& s) {
    std::uint64_t area = 0;
    for (const RleMask& m : s.masks) area += rle_area(m);
    return area;
}

}  // namespace seqvis
