#include "seqvis/reduction.hpp"

#include <algorithm>
#include <map>

namespace seqvis {

namespace {

// Score descending, then smaller (key_frame, slot).
bool precedes(const ScoredSequence& a, const ScoredSequence& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.key_frame != b.key_frame) return a.key_frame < b.key_frame;
    return a.slot < b.slot;
}

std::uint64_t total_area(const std::vector<RleMask>& masks) {
    std::uint64_t area = 0;
    for (const RleMask& m : masks) area += rle_area(m);
    return area;
}

}  // namespace

ScoredSequence make_scored(const SequenceProposal& s) {
    const SequenceScore sc = sequence_score(s);
    return {sc.score, sc.class_index, s.key_frame, s.slot, s.masks};
}

std::vector<SequenceProposal> drop_empty(std::vector<SequenceProposal> sequences) {
    std::erase_if(sequences, [](const SequenceProposal& s) { return sequence_area(s) == 0; });
    return sequences;
}

std::vector<ScoredSequence> drop_empty_scored(std::vector<ScoredSequence> sequences) {
    std::erase_if(sequences, [](const ScoredSequence& s) { return total_area(s.masks) == 0; });
    return sequences;
}

std::vector<ScoredSequence> sequence_nms(std::vector<ScoredSequence> sequences, double theta,
                                         std::optional<int> max_output) {
    std::vector<ScoredSequence> kept;
    std::vector<std::uint8_t> alive(sequences.size(), 1);
    size_t remaining = sequences.size();
    while (remaining > 0) {
        if (max_output && static_cast<int>(kept.size()) >= *max_output) break;
        int best = -1;
        for (size_t i = 0; i < sequences.size(); ++i) {
            if (!alive[i]) continue;
            if (best < 0 || precedes(sequences[i], sequences[best])) best = static_cast<int>(i);
        }
        alive[best] = 0;
        const ScoredSequence& winner = sequences[best];
        const std::int64_t n = static_cast<std::int64_t>(sequences.size());
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            if (sequence_iou_masks(winner.masks, sequences[i].masks) >= theta) alive[i] = 0;
        }
        remaining = 0;
        for (std::uint8_t a : alive) remaining += a;
        kept.push_back(winner);
    }
    return kept;
}

std::vector<SequenceProposal> sequence_nms(const std::vector<SequenceProposal>& sequences,
                                           double theta, std::optional<int> max_output) {
    std::vector<ScoredSequence> scored;
    scored.reserve(sequences.size());
    for (const SequenceProposal& s : sequences) scored.push_back(make_scored(s));
    const std::vector<ScoredSequence> kept = sequence_nms(std::move(scored), theta, max_output);

    std::vector<SequenceProposal> out;
    out.reserve(kept.size());
    for (const ScoredSequence& k : kept) {
        for (const SequenceProposal& s : sequences) {
            if (s.key_frame == k.key_frame && s.slot == k.slot) {
                out.push_back(s);
                break;
            }
        }
    }
    return out;
}

std::vector<ScoredSequence> category_aware_reduce(std::vector<ScoredSequence> sequences,
                                                  double theta) {
    std::map<int, std::vector<ScoredSequence>> by_class;
    for (ScoredSequence& s : sequences) by_class[s.class_index].push_back(std::move(s));
    std::vector<ScoredSequence> out;
    for (auto& [cls, group] : by_class) {
        std::vector<ScoredSequence> kept = sequence_nms(std::move(group), theta);
        for (ScoredSequence& s : kept) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), precedes);
    return out;
}

}  // namespace seqvis
