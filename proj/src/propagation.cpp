#include "seqvis/propagation.hpp"

#include <algorithm>
#include <string>

#include "seqvis/errors.hpp"

namespace seqvis {

std::vector<int> select_key_frames(int frame_count, int key_frame_count) {
    if (frame_count < 1) throw config_error("select_key_frames: frame_count must be >= 1");
    if (key_frame_count < 1) throw config_error("select_key_frames: key_frame_count must be >= 1");
    const int step = std::max(frame_count / key_frame_count, 1);
    std::vector<int> keys;
    for (int k = 0; k < key_frame_count; ++k) {
        const int idx = std::min(step * k, frame_count - 1);
        if (keys.empty() || keys.back() != idx) keys.push_back(idx);
    }
    return keys;
}

namespace {

// One key frame's full bidirectional run.
std::vector<SequenceProposal> run_single_key(const std::vector<Frame>& frames, int key_frame,
                                             const Detector& detector,
                                             const Propagator& propagator,
                                             const PropagationOptions& options) {
    const int frame_count = static_cast<int>(frames.size());
    const std::vector<Detection> detections = detector.detect(frames[key_frame]);
    if (static_cast<int>(detections.size()) > options.max_instances) {
        throw data_error("detector returned " + std::to_string(detections.size()) +
                         " instances, contract allows at most " +
                         std::to_string(options.max_instances));
    }
    if (detections.empty()) return {};

    const int slots = static_cast<int>(detections.size());
    std::vector<SequenceProposal> sequences(slots);
    for (int o = 0; o < slots; ++o) {
        SequenceProposal& s = sequences[o];
        s.key_frame = key_frame;
        s.slot = o;
        s.masks.assign(frame_count, RleMask{});
        s.frame_scores.assign(frame_count, detections[o].scores);
        s.provenance.assign(frame_count, Provenance::kDetected);
        s.masks[key_frame] = detections[o].mask;  // raw detection, may overlap others
    }

    std::vector<RleMask> key_masks;
    for (const Detection& d : detections) key_masks.push_back(d.mask);
    MemoryPool pool({key_frame, frames[key_frame], key_masks});

    const auto propagate_range = [&](int from, int to, int dir, Provenance tag) {
        int steps = 0;
        for (int i = from; i != to; i += dir) {
            const ProbMapSet probs = propagator.propagate(pool, frames[i]);
            LabeledFrame labeled = argmax_labeling(soft_aggregate(probs));
            for (int o = 0; o < slots; ++o) {
                sequences[o].masks[i] = labeled[o];
                sequences[o].provenance[i] = tag;
                if (options.frame_score_hook) {
                    sequences[o].frame_scores[i] =
                        options.frame_score_hook(o, i, detections[o].scores);
                }
            }
            ++steps;
            if (options.memory_stride > 0 && steps % options.memory_stride == 0) {
                pool.append({i, frames[i], std::move(labeled)});
            }
        }
    };

    propagate_range(key_frame + 1, frame_count, 1, Provenance::kPropagatedForward);
    pool.reset_to_key();
    propagate_range(key_frame - 1, -1, -1, Provenance::kPropagatedBackward);
    return sequences;
}

}  // namespace

std::vector<SequenceProposal> memory_k_propagation(const std::vector<Frame>& frames,
                                                   const Detector& detector,
                                                   const Propagator& propagator,
                                                   const PropagationOptions& options) {
    if (frames.empty()) throw config_error("memory_k_propagation: no frames");
    if (options.max_instances < 1) throw config_error("memory_k_propagation: max_instances < 1");
    const std::vector<int> keys =
        select_key_frames(static_cast<int>(frames.size()), options.key_frame_count);

    std::vector<std::vector<SequenceProposal>> per_key(keys.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) if (options.parallel_keys)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(keys.size()); ++k) {
        try {
            per_key[k] = run_single_key(frames, keys[k], detector, propagator, options);
        } catch (...) {
#pragma omp critical(seqvis_prop_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<SequenceProposal> gathered;
    for (std::vector<SequenceProposal>& set : per_key) {
        for (SequenceProposal& s : set) gathered.push_back(std::move(s));
    }
    return gathered;
}

}  // namespace seqvis
