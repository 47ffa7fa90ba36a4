// Compares the OpenMP kernels against their serial references: verifies the
// outputs match bit for bit and reports wall times.

#include <chrono>
#include <cstdio>
#include <string>

#include "seqvis/dataset.hpp"
#include "seqvis/kernels.hpp"
#include "seqvis/pipeline.hpp"
#include "seqvis/propagation.hpp"
#include "seqvis/rng.hpp"
#include "seqvis/soft_agg.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace seqvis;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void print_row(const std::string& name, double serial_s, double parallel_s, bool equal) {
    std::printf("%-28s %10.3fs %10.3fs %8.2fx   %s\n", name.c_str(), serial_s, parallel_s,
                serial_s / parallel_s, equal ? "outputs equal" : "OUTPUTS DIFFER");
}

ProbMapSet random_prob_maps(Rng& rng, int instances, int h, int w) {
    ProbMapSet maps;
    maps.height = h;
    maps.width = w;
    for (int o = 0; o < instances; ++o) {
        ProbGrid g(h, w);
        for (double& v : g.data) v = rng.uniform();
        maps.maps.push_back(std::move(g));
    }
    return maps;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#endif
    std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

    Rng rng(7);

    {  // soft aggregation on a large stack of probability maps
        const ProbMapSet maps = random_prob_maps(rng, 8, 1024, 1024);
        auto t0 = Clock::now();
        const auto serial = soft_aggregate_serial(maps);
        const double ts = seconds_since(t0);
        t0 = Clock::now();
        const auto parallel = soft_aggregate(maps);
        const double tp = seconds_since(t0);
        print_row("soft_aggregate 8x1024x1024", ts, tp, serial == parallel);
    }

    {  // translation search across a populated memory pool
        ScenarioConfig cfg;
        cfg.video_count = 1;
        cfg.frames_per_video = 8;
        cfg.width = 256;
        cfg.height = 256;
        cfg.shape_size_min = 24;
        cfg.shape_size_max = 40;
        cfg.instances_min = 4;
        cfg.instances_max = 4;
        cfg.occluder_probability = 0.0;
        const VideoDataset ds = generate_dataset(cfg);
        const auto anns = ds.annotations_for_video(0);
        std::vector<MemoryEntry> entries;
        for (int t = 0; t < 4; ++t) {
            MemoryEntry e;
            e.frame_index = t;
            e.appearance = ds.videos[0].frames[t];
            for (const Annotation* a : anns) e.masks.push_back(a->segmentations[t]);
            entries.push_back(std::move(e));
        }
        const Frame& query = ds.videos[0].frames[7];

        auto t0 = Clock::now();
        std::vector<TranslationMatch> serial, parallel;
        for (size_t o = 0; o < anns.size(); ++o) {
            serial.push_back(best_translation_serial(entries, static_cast<int>(o), query, 24, 2000));
        }
        const double ts = seconds_since(t0);
        t0 = Clock::now();
        for (size_t o = 0; o < anns.size(); ++o) {
            parallel.push_back(best_translation(entries, static_cast<int>(o), query, 24, 2000));
        }
        const double tp = seconds_since(t0);
        bool equal = true;
        for (size_t o = 0; o < serial.size(); ++o) {
            equal = equal && serial[o].found == parallel[o].found &&
                    serial[o].entry_index == parallel[o].entry_index &&
                    serial[o].dy == parallel[o].dy && serial[o].dx == parallel[o].dx;
        }
        print_row("best_translation r=24", ts, tp, equal);
    }

    {  // end-to-end pipeline at 1 thread vs all threads
        ScenarioConfig cfg;
        cfg.video_count = 8;
        const VideoDataset ds = generate_dataset(cfg);
        RunConfig rc;
        rc.detector = "oracle";
        rc.propagator = "translation";
        rc.threads = 1;
        auto t0 = Clock::now();
        const RunOutput serial = run_pipeline(ds, rc);
        const double ts = seconds_since(t0);
#ifdef _OPENMP
        rc.threads = omp_get_max_threads();
#endif
        t0 = Clock::now();
        const RunOutput parallel = run_pipeline(ds, rc);
        const double tp = seconds_since(t0);
        const bool equal =
            results_to_json(serial.results) == results_to_json(parallel.results);
        print_row("pipeline 8 videos", ts, tp, equal);
    }

    return 0;
}
