#include "seqvis/detector.hpp"

#include <algorithm>
#include <string>

#include "seqvis/errors.hpp"
#include "seqvis/rng.hpp"

namespace seqvis {

namespace {

double max_score(const ClassScoreVector& scores) {
    double best = 0.0;
    for (double s : scores) best = std::max(best, s);
    return best;
}

// Sort by max score descending, truncate to O, then apply the threshold.
std::vector<Detection> finalize(std::vector<Detection> dets, const DetectionConfig& cfg) {
    std::stable_sort(dets.begin(), dets.end(), [](const Detection& a, const Detection& b) {
        return max_score(a.scores) > max_score(b.scores);
    });
    if (static_cast<int>(dets.size()) > cfg.max_instances) dets.resize(cfg.max_instances);
    std::vector<Detection> out;
    for (Detection& d : dets) {
        if (max_score(d.scores) >= cfg.score_threshold) out.push_back(std::move(d));
    }
    return out;
}

}  // namespace

OracleDetector::OracleDetector(const VideoDataset& dataset, int video_id, DetectionConfig config)
    : annotations_(dataset.annotations_for_video(video_id)),
      class_count_(static_cast<int>(dataset.categories.size())),
      video_id_(video_id),
      config_(config) {
    for (const Annotation* a : annotations_) {
        class_indices_.push_back(dataset.category_index(a->category_id));
    }
}

std::vector<Detection> OracleDetector::detect(const Frame& frame) const {
    std::vector<Detection> dets;
    for (size_t i = 0; i < annotations_.size(); ++i) {
        const RleMask& gt = annotations_[i]->segmentations[frame.index];
        if (rle_is_empty(gt)) continue;

        Rng rng = Rng(config_.rng_seed)
                      .fork(static_cast<std::uint64_t>(video_id_) + 1)
                      .fork(static_cast<std::uint64_t>(frame.index) + 1)
                      .fork(i + 1);
        Detection d;
        d.mask = gt;
        if (config_.perturb_radius > 0) {
            const Bitmap bitmap = rle_decode(gt);
            const Bitmap warped = rng.coin(0.5)
                                      ? chebyshev_dilate(bitmap, config_.perturb_radius)
                                      : chebyshev_erode(bitmap, config_.perturb_radius);
            d.mask = rle_encode(warped);
            if (rle_is_empty(d.mask)) continue;  // eroded away entirely
        }
        d.scores.assign(class_count_, 0.0);
        d.scores[class_indices_[i]] = 1.0;
        if (config_.score_noise > 0.0) {
            for (double& s : d.scores) {
                s = std::clamp(s + rng.uniform(-config_.score_noise, config_.score_noise), 0.0, 1.0);
            }
        }
        dets.push_back(std::move(d));
    }
    return finalize(std::move(dets), config_);
}

ComponentDetector::ComponentDetector(std::vector<Category> palette, DetectionConfig config)
    : palette_(std::move(palette)), config_(config) {}

std::vector<Detection> ComponentDetector::detect(const Frame& frame) const {
    const int h = frame.height, w = frame.width;
    Grid<int> color_index(h, w, -1);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::uint8_t* px = frame.pixel(r, c);
            if (px[0] == 0 && px[1] == 0 && px[2] == 0) continue;  // background
            int found = -1;
            for (size_t i = 0; i < palette_.size(); ++i) {
                const auto& col = palette_[i].color;
                if (px[0] == col[0] && px[1] == col[1] && px[2] == col[2]) {
                    found = static_cast<int>(i);
                    break;
                }
            }
            if (found < 0) {
                throw data_error("component detector: unknown color (" + std::to_string(px[0]) +
                                 "," + std::to_string(px[1]) + "," + std::to_string(px[2]) +
                                 ") at pixel (" + std::to_string(r) + "," + std::to_string(c) +
                                 ")");
            }
            color_index.at(r, c) = found;
        }
    }

    // Flood fill, 4-connectivity, components in row-major discovery order.
    std::vector<Detection> dets;
    Grid<std::uint8_t> seen(h, w, 0);
    std::vector<std::pair<int, int>> stack;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (seen.at(r, c) || color_index.at(r, c) < 0) continue;
            const int ci = color_index.at(r, c);
            Bitmap component(h, w);
            int area = 0;
            stack.assign(1, {r, c});
            seen.at(r, c) = 1;
            while (!stack.empty()) {
                const auto [pr, pc] = stack.back();
                stack.pop_back();
                component.at(pr, pc) = 1;
                ++area;
                constexpr int kDr[] = {-1, 1, 0, 0};
                constexpr int kDc[] = {0, 0, -1, 1};
                for (int k = 0; k < 4; ++k) {
                    const int nr = pr + kDr[k], nc = pc + kDc[k];
                    if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
                    if (seen.at(nr, nc) || color_index.at(nr, nc) != ci) continue;
                    seen.at(nr, nc) = 1;
                    stack.push_back({nr, nc});
                }
            }
            if (area < kMinComponentArea) continue;
            Detection d;
            d.mask = rle_encode(component);
            d.scores.assign(palette_.size(), 0.0);
            d.scores[ci] = 1.0;
            dets.push_back(std::move(d));
        }
    }
    return finalize(std::move(dets), config_);
}

}  // namespace seqvis
