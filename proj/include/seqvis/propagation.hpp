#pragma once

#include <functional>
#include <vector>

#include "seqvis/detector.hpp"
#include "seqvis/propagator.hpp"
#include "seqvis/sequence.hpp"

namespace seqvis {

// Evenly spaced key frames: raw indices max(floor(T/K),1)*k for k=0..K-1,
// clamped to T-1 and deduplicated in order. Strictly increasing, starts at 0.
std::vector<int> select_key_frames(int frame_count, int key_frame_count);

struct PropagationOptions {
    int key_frame_count = 4;   // K
    int memory_stride = 5;     // append every stride-th propagated frame; 1 = every frame
    int max_instances = 10;    // O; a detector returning more is a contract violation
    bool parallel_keys = true; // the per-key runs are independent

    // Optional per-frame re-scoring of propagated frames. Default keeps a
    // copy of the key-frame detection scores for every frame.
    std::function<ClassScoreVector(int slot, int frame_index, const ClassScoreVector& key_scores)>
        frame_score_hook;
};

// Bidirectional memory propagation from every key frame. For each key frame:
// detect, then propagate forward to the last frame and backward to the first,
// converting each probability map to disjoint masks (soft aggregation +
// argmax) and appending every memory_stride-th frame to the pool, which is
// reset to the key entry between the two passes. Returns the gathered
// redundant sequence set ordered by (key frame, slot); at most K*O sequences.
std::vector<SequenceProposal> memory_k_propagation(const std::vector<Frame>& frames,
                                                   const Detector& detector,
                                                   const Propagator& propagator,
                                                   const PropagationOptions& options);

}  // namespace seqvis
