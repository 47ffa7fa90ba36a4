#pragma once

#include <vector>

#include "seqvis/grid.hpp"
#include "seqvis/rle.hpp"

namespace seqvis {

// Probability clamp applied before the odds-ratio aggregation; the odds
// x/(1-x) are singular at 1, so inputs are pinned to [kProbEps, 1-kProbEps].
inline constexpr double kProbEps = 1e-5;

// One probability grid per instance, all the same size.
struct ProbMapSet {
    int height = 0;
    int width = 0;
    std::vector<ProbGrid> maps;

    int instance_count() const { return static_cast<int>(maps.size()); }
};

// Per-instance masks for one frame. Produced by argmax_labeling, where they
// are pairwise disjoint; key-frame detections stored in a memory pool may
// overlap.
using LabeledFrame = std::vector<RleMask>;

// Odds-ratio normalization of overlapping instance probabilities against an
// implicit background. Returns instance_count + 1 grids; index 0 is the
// background. At every pixel the outputs sum to 1.
std::vector<ProbGrid> soft_aggregate(const ProbMapSet& maps);

// Serial twin of soft_aggregate, kept as a test and benchmark reference.
std::vector<ProbGrid> soft_aggregate_serial(const ProbMapSet& maps);

// Assigns each pixel to the grid with the highest probability; ties go to the
// lowest index, so the background (index 0) wins over instances. Returns the
// instance masks only (grids 1..O), pairwise disjoint.
LabeledFrame argmax_labeling(const std::vector<ProbGrid>& aggregated);

}  // namespace seqvis
