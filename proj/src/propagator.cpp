#include "seqvis/propagator.hpp"

#include <algorithm>

#include "seqvis/kernels.hpp"

namespace seqvis {

namespace {

ProbMapSet floor_maps(int instances, int height, int width, double eta) {
    ProbMapSet maps;
    maps.height = height;
    maps.width = width;
    maps.maps.assign(instances, ProbGrid(height, width, eta));
    return maps;
}

void paint_mask(ProbGrid& grid, const RleMask& mask, double inside) {
    const Bitmap bitmap = rle_decode(mask);
    for (size_t i = 0; i < bitmap.data.size(); ++i) {
        if (bitmap.data[i]) grid.data[i] = inside;
    }
}

}  // namespace

ProbMapSet TranslationPropagator::propagate(const MemoryPool& memory, const Frame& query) const {
    const int instances = memory.instance_count();
    ProbMapSet maps =
        floor_maps(instances, query.height, query.width, config_.floor_probability);
    for (int o = 0; o < instances; ++o) {
        const TranslationMatch match = best_translation(
            memory.entries(), o, query, config_.search_radius, config_.agreement_threshold);
        if (!match.found) continue;
        const MemoryEntry& entry = memory.entries()[match.entry_index];
        const Bitmap source = rle_decode(entry.masks[o]);
        ProbGrid& grid = maps.maps[o];
        const double inside = 1.0 - config_.floor_probability;
        for (int r = 0; r < source.height; ++r) {
            for (int c = 0; c < source.width; ++c) {
                if (!source.at(r, c)) continue;
                const int qr = r + match.dy, qc = c + match.dx;
                if (qr < 0 || qr >= query.height || qc < 0 || qc >= query.width) continue;
                grid.at(qr, qc) = inside;
            }
        }
    }
    return maps;
}

OraclePropagator::OraclePropagator(const VideoDataset& dataset, int video_id,
                                   OraclePropagatorConfig config)
    : annotations_(dataset.annotations_for_video(video_id)), config_(config) {}

ProbMapSet OraclePropagator::propagate(const MemoryPool& memory, const Frame& query) const {
    const MemoryEntry& key = memory.key_entry();
    const int instances = memory.instance_count();
    ProbMapSet maps = floor_maps(instances, query.height, query.width, config_.floor_probability);

    // Identities are fixed at the key frame: greedy maximal-IoU matching
    // between detection slots and GT instances, highest IoU first, ties to
    // the lower (slot, annotation) pair.
    struct Pair {
        double iou;
        int slot;
        int ann;
    };
    std::vector<Pair> pairs;
    for (int s = 0; s < instances; ++s) {
        for (size_t a = 0; a < annotations_.size(); ++a) {
            const RleMask& gt = annotations_[a]->segmentations[key.frame_index];
            const double iou = frame_iou(key.masks[s], gt);
            if (iou >= config_.match_threshold) {
                pairs.push_back({iou, s, static_cast<int>(a)});
            }
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
        if (x.iou != y.iou) return x.iou > y.iou;
        if (x.slot != y.slot) return x.slot < y.slot;
        return x.ann < y.ann;
    });
    std::vector<int> slot_to_ann(instances, -1);
    std::vector<bool> ann_used(annotations_.size(), false);
    for (const Pair& p : pairs) {
        if (slot_to_ann[p.slot] != -1 || ann_used[p.ann]) continue;
        slot_to_ann[p.slot] = p.ann;
        ann_used[p.ann] = true;
    }

    for (int s = 0; s < instances; ++s) {
        if (slot_to_ann[s] < 0) continue;
        const RleMask& gt = annotations_[slot_to_ann[s]]->segmentations[query.index];
        if (rle_is_empty(gt)) continue;
        paint_mask(maps.maps[s], gt, 1.0 - config_.floor_probability);
    }
    return maps;
}

}  // namespace seqvis
