#pragma once

#include <cstdint>
#include <vector>

#include "seqvis/dataset.hpp"
#include "seqvis/sequence.hpp"

namespace seqvis {

struct Detection {
    RleMask mask;
    ClassScoreVector scores;
};

struct DetectionConfig {
    int max_instances = 10;        // O
    double score_threshold = 0.2;  // detections below this max score are dropped
    int perturb_radius = 0;        // 0 disables morphological perturbation
    double score_noise = 0.0;      // uniform noise amplitude added to scores
    std::uint64_t rng_seed = 0;
};

// Image-level detection contract: at most max_instances detections, each with
// max class score >= score_threshold. Implementations must be safe for
// concurrent calls.
class Detector {
public:
    virtual ~Detector() = default;
    virtual std::vector<Detection> detect(const Frame& frame) const = 0;
};

// Reads detections straight from ground truth, optionally degraded by
// erode/dilate perturbation and score noise so downstream stages can be
// exercised with imperfect masks.
class OracleDetector : public Detector {
public:
    OracleDetector(const VideoDataset& dataset, int video_id, DetectionConfig config);
    std::vector<Detection> detect(const Frame& frame) const override;

private:
    std::vector<const Annotation*> annotations_;
    std::vector<int> class_indices_;
    int class_count_;
    int video_id_;
    DetectionConfig config_;
};

// Segments synthetic frames by their palette: 4-connected components of
// non-background palette colors, one-hot scores, components under
// min_component_area discarded. Unknown colors are a data error naming the
// pixel.
class ComponentDetector : public Detector {
public:
    static constexpr int kMinComponentArea = 4;

    ComponentDetector(std::vector<Category> palette, DetectionConfig config);
    std::vector<Detection> detect(const Frame& frame) const override;

private:
    std::vector<Category> palette_;
    DetectionConfig config_;
};

}  // namespace seqvis
