#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "seqvis/rle.hpp"

namespace seqvis {

// One RGB8 video frame, row-major, 3 bytes per pixel.
struct Frame {
    int index = 0;
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> rgb;

    Frame() = default;
    Frame(int idx, int h, int w)
        : index(idx), height(h), width(w), rgb(static_cast<size_t>(h) * w * 3, 0) {}

    const std::uint8_t* pixel(int r, int c) const {
        return rgb.data() + 3 * (static_cast<size_t>(r) * width + c);
    }
    std::uint8_t* pixel(int r, int c) {
        return rgb.data() + 3 * (static_cast<size_t>(r) * width + c);
    }

    bool operator==(const Frame&) const = default;
};

struct Category {
    int id = 0;
    std::string name;
    std::array<std::uint8_t, 3> color{};  // palette color used by the renderer

    bool operator==(const Category&) const = default;
};

struct VideoData {
    int id = 0;
    std::vector<Frame> frames;

    int frame_count() const { return static_cast<int>(frames.size()); }
    bool operator==(const VideoData&) const = default;
};

// Ground-truth track of one instance. Absent frames carry an empty mask
// (serialized as null).
struct Annotation {
    int video_id = 0;
    int instance_id = 0;
    int category_id = 0;
    std::vector<RleMask> segmentations;

    bool operator==(const Annotation&) const = default;
};

struct VideoDataset {
    int width = 0;
    int height = 0;
    std::vector<Category> categories;
    std::vector<VideoData> videos;
    std::vector<Annotation> annotations;

    std::vector<const Annotation*> annotations_for_video(int video_id) const;
    const VideoData* find_video(int video_id) const;
    int category_index(int category_id) const;  // -1 when unknown

    bool operator==(const VideoDataset&) const = default;
};

enum class MotionModel { kLinear, kSinusoidal };

// Parameters of the synthetic moving-shapes benchmark generator. Everything
// is deterministic under rng_seed; each video draws from its own substream so
// per-video generation can run in any order.
struct ScenarioConfig {
    int video_count = 20;
    int frames_per_video = 24;
    int width = 64;
    int height = 64;
    int instances_min = 2;
    int instances_max = 4;
    int shape_size_min = 8;   // bounding-box size of a shape, pixels
    int shape_size_max = 14;
    int speed_max = 1;        // per-axis velocity magnitude, px/frame
    double sinusoidal_probability = 0.3;
    double occluder_probability = 0.5;
    double late_entry_probability = 0.0;
    std::uint64_t rng_seed = 826543;
};

// Renders moving colored shapes (circle, rectangle, triangle) with z-ordered
// occlusion, frame exit, and optional late entry. Ground-truth masks cover
// the visible region only.
VideoDataset generate_dataset(const ScenarioConfig& config);

// Writes dataset.json plus frames/*.rgb under `dir`.
void save_dataset(const VideoDataset& ds, const std::string& dir);

// Reads a dataset from a directory or a dataset.json path. Validates the
// schema and throws data_error naming the offending field.
VideoDataset load_dataset(const std::string& path);

// The fixed shape catalog used by the generator.
std::vector<Category> default_categories();

}  // namespace seqvis
