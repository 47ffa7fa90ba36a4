#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqvis/dataset.hpp"
#include "seqvis/metrics.hpp"
#include "seqvis/results_io.hpp"

namespace seqvis {

struct RunConfig {
    int key_frames = 4;            // K
    double theta = 0.5;            // sequence NMS IoU threshold
    int max_instances = 10;        // O
    double score_threshold = 0.2;
    int memory_stride = 5;
    std::string detector = "oracle";      // oracle | components
    std::string propagator = "oracle";    // oracle | translation
    bool category_aware = false;
    std::uint64_t seed = 0;
    int threads = 1;
    std::optional<int> max_output;

    // detector perturbation (oracle detector only)
    int perturb_radius = 0;
    double score_noise = 0.0;

    // translation propagator
    int search_radius = 16;
    double agreement_threshold = 2000.0;

    // oracle propagator
    double match_threshold = 0.5;

    void validate() const;  // throws config_error
    std::map<std::string, std::string> meta() const;
};

struct RunOutput {
    ResultsFile results;
    bool has_ground_truth = false;
    EvalReport report;  // filled when the dataset carries annotations
};

// Full pipeline over a loaded dataset: per video, detect at key frames,
// memory propagation, drop empties, sequence NMS, optional category-aware
// pass; evaluation against the dataset annotations when present. Videos are
// processed in parallel (config.threads); output order is by video, so the
// results are identical at any parallelism degree.
RunOutput run_pipeline(const VideoDataset& dataset, const RunConfig& config);

// Ground-truth records in the form the evaluators consume.
std::vector<GroundTruthSequence> dataset_ground_truth(const VideoDataset& dataset);

std::vector<int> dataset_video_ids(const VideoDataset& dataset);

}  // namespace seqvis
