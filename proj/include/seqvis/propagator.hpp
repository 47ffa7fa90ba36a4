#pragma once

#include "seqvis/dataset.hpp"
#include "seqvis/memory_pool.hpp"
#include "seqvis/soft_agg.hpp"

namespace seqvis {

// Propagates the instances held by a memory pool onto a query frame,
// producing one probability grid per key-frame detection slot.
// Implementations are deterministic functions of (memory, query) and safe
// for concurrent calls.
class Propagator {
public:
    virtual ~Propagator() = default;
    virtual ProbMapSet propagate(const MemoryPool& memory, const Frame& query) const = 0;
};

struct TranslationPropagatorConfig {
    int search_radius = 16;            // Chebyshev radius of the translation search
    double agreement_threshold = 2000; // max mean squared channel difference (tau)
    double floor_probability = 1e-3;   // eta: probability outside the matched mask
};

// Rigid-translation matcher: each instance is located by sliding its memory
// footprints over the query frame and scoring appearance agreement. A match
// emits 1-eta inside the translated mask and eta outside; no match within
// tau emits the all-eta map (instance absent this frame).
class TranslationPropagator : public Propagator {
public:
    explicit TranslationPropagator(TranslationPropagatorConfig config = {}) : config_(config) {}
    ProbMapSet propagate(const MemoryPool& memory, const Frame& query) const override;

private:
    TranslationPropagatorConfig config_;
};

struct OraclePropagatorConfig {
    double match_threshold = 0.5;     // key-frame IoU needed to adopt a GT identity
    double floor_probability = 1e-3;
};

// Upper-bound propagator backed by ground truth: detection slots are matched
// to GT instances at the key frame by maximal IoU, then every query frame
// emits the matched instance's GT mask as a near-binary map. Unmatched slots
// emit the all-eta map.
class OraclePropagator : public Propagator {
public:
    OraclePropagator(const VideoDataset& dataset, int video_id, OraclePropagatorConfig config = {});
    ProbMapSet propagate(const MemoryPool& memory, const Frame& query) const override;

private:
    std::vector<const Annotation*> annotations_;
    OraclePropagatorConfig config_;
};

}  // namespace seqvis
