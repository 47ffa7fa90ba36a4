#pragma once

#include <optional>
#include <vector>

#include "seqvis/sequence.hpp"

namespace seqvis {

struct ReductionConfig {
    double iou_threshold = 0.5;  // theta, in (0, 1]
    bool category_aware = false;
    std::optional<int> max_output;
};

// A sequence with its precomputed score and class, the unit the NMS loop
// works on. `key_frame` and `slot` break score ties: smaller wins.
struct ScoredSequence {
    double score = 0.0;
    int class_index = 0;
    int key_frame = 0;
    int slot = 0;
    std::vector<RleMask> masks;
};

ScoredSequence make_scored(const SequenceProposal& s);

// Removes sequences whose total mask area over all frames is zero,
// preserving order.
std::vector<SequenceProposal> drop_empty(std::vector<SequenceProposal> sequences);
std::vector<ScoredSequence> drop_empty_scored(std::vector<ScoredSequence> sequences);

// Greedy sequence-level NMS: repeatedly keep the highest-scoring remaining
// sequence and remove every remaining one whose sequence IoU with it is
// >= theta. Output order is the keep order (score descending).
std::vector<ScoredSequence> sequence_nms(std::vector<ScoredSequence> sequences, double theta,
                                         std::optional<int> max_output = std::nullopt);
std::vector<SequenceProposal> sequence_nms(const std::vector<SequenceProposal>& sequences,
                                           double theta,
                                           std::optional<int> max_output = std::nullopt);

// Second pass after classification: NMS within each assigned class, then the
// survivors concatenated in score order.
std::vector<ScoredSequence> category_aware_reduce(std::vector<ScoredSequence> sequences,
                                                  double theta);

}  // namespace seqvis
