#include "seqvis/pipeline.hpp"

#include <memory>

#include "seqvis/detector.hpp"
#include "seqvis/errors.hpp"
#include "seqvis/propagation.hpp"
#include "seqvis/propagator.hpp"
#include "seqvis/reduction.hpp"

namespace seqvis {

void RunConfig::validate() const {
    if (key_frames < 1) throw config_error("key_frames must be >= 1");
    if (theta <= 0.0 || theta > 1.0) throw config_error("theta must be in (0,1]");
    if (max_instances < 1) throw config_error("max_instances must be >= 1");
    if (score_threshold < 0.0 || score_threshold > 1.0) {
        throw config_error("score_threshold must be in [0,1]");
    }
    if (memory_stride < 1) throw config_error("memory_stride must be >= 1");
    if (detector != "oracle" && detector != "components") {
        throw config_error("detector must be 'oracle' or 'components'");
    }
    if (propagator != "oracle" && propagator != "translation") {
        throw config_error("propagator must be 'oracle' or 'translation'");
    }
    if (threads < 1) throw config_error("threads must be >= 1");
    if (search_radius < 1) throw config_error("search_radius must be >= 1");
    if (match_threshold < 0.0 || match_threshold > 1.0) {
        throw config_error("match_threshold must be in [0,1]");
    }
    if (perturb_radius < 0) throw config_error("perturb_radius must be >= 0");
    if (score_noise < 0.0) throw config_error("score_noise must be >= 0");
    if (max_output && *max_output < 1) throw config_error("max_output must be >= 1");
}

std::map<std::string, std::string> RunConfig::meta() const {
    std::map<std::string, std::string> m;
    m["key_frames"] = std::to_string(key_frames);
    m["theta"] = std::to_string(theta);
    m["max_instances"] = std::to_string(max_instances);
    m["score_threshold"] = std::to_string(score_threshold);
    m["memory_stride"] = std::to_string(memory_stride);
    m["detector"] = detector;
    m["propagator"] = propagator;
    m["category_aware"] = category_aware ? "true" : "false";
    m["seed"] = std::to_string(seed);
    return m;
}

std::vector<GroundTruthSequence> dataset_ground_truth(const VideoDataset& dataset) {
    std::vector<GroundTruthSequence> gts;
    for (const Annotation& a : dataset.annotations) {
        gts.push_back({a.video_id, a.category_id, a.segmentations});
    }
    return gts;
}

std::vector<int> dataset_video_ids(const VideoDataset& dataset) {
    std::vector<int> ids;
    for (const VideoData& v : dataset.videos) ids.push_back(v.id);
    return ids;
}

namespace {

std::vector<ResultEntry> run_video(const VideoDataset& dataset, const VideoData& video,
                                   const RunConfig& config) {
    DetectionConfig det_config;
    det_config.max_instances = config.max_instances;
    det_config.score_threshold = config.score_threshold;
    det_config.perturb_radius = config.perturb_radius;
    det_config.score_noise = config.score_noise;
    det_config.rng_seed = config.seed;

    std::unique_ptr<Detector> detector;
    if (config.detector == "oracle") {
        detector = std::make_unique<OracleDetector>(dataset, video.id, det_config);
    } else {
        detector = std::make_unique<ComponentDetector>(dataset.categories, det_config);
    }

    std::unique_ptr<Propagator> propagator;
    if (config.propagator == "oracle") {
        OraclePropagatorConfig pc;
        pc.match_threshold = config.match_threshold;
        propagator = std::make_unique<OraclePropagator>(dataset, video.id, pc);
    } else {
        TranslationPropagatorConfig tc;
        tc.search_radius = config.search_radius;
        tc.agreement_threshold = config.agreement_threshold;
        propagator = std::make_unique<TranslationPropagator>(tc);
    }

    PropagationOptions options;
    options.key_frame_count = config.key_frames;
    options.memory_stride = config.memory_stride;
    options.max_instances = config.max_instances;

    std::vector<SequenceProposal> proposals =
        memory_k_propagation(video.frames, *detector, *propagator, options);
    proposals = drop_empty(std::move(proposals));

    std::vector<ScoredSequence> scored;
    scored.reserve(proposals.size());
    for (const SequenceProposal& p : proposals) scored.push_back(make_scored(p));
    std::vector<ScoredSequence> kept = sequence_nms(std::move(scored), config.theta,
                                                    config.max_output);
    if (config.category_aware) kept = category_aware_reduce(std::move(kept), config.theta);

    std::vector<ResultEntry> entries;
    entries.reserve(kept.size());
    for (ScoredSequence& s : kept) {
        ResultEntry e;
        e.video_id = video.id;
        e.key_frame = s.key_frame;
        e.slot = s.slot;
        e.category_id = dataset.categories[s.class_index].id;
        e.score = s.score;
        e.segmentations = std::move(s.masks);
        entries.push_back(std::move(e));
    }
    return entries;
}

}  // namespace

RunOutput run_pipeline(const VideoDataset& dataset, const RunConfig& config) {
    config.validate();
    if (dataset.videos.empty()) throw data_error("dataset has no videos");

    const std::int64_t n = static_cast<std::int64_t>(dataset.videos.size());
    std::vector<std::vector<ResultEntry>> per_video(dataset.videos.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.threads)
    for (std::int64_t v = 0; v < n; ++v) {
        try {
            per_video[v] = run_video(dataset, dataset.videos[v], config);
        } catch (...) {
#pragma omp critical(seqvis_pipeline_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    RunOutput out;
    out.results.meta = config.meta();
    for (std::vector<ResultEntry>& entries : per_video) {
        for (ResultEntry& e : entries) out.results.entries.push_back(std::move(e));
    }

    if (!dataset.annotations.empty()) {
        out.has_ground_truth = true;
        out.report = evaluate(to_predictions(out.results), dataset_ground_truth(dataset),
                              dataset_video_ids(dataset));
    }
    return out;
}

}  // namespace seqvis
