#include "seqvis/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "seqvis/errors.hpp"
#include "seqvis/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace seqvis {

std::vector<const Annotation*> VideoDataset::annotations_for_video(int video_id) const {
    std::vector<const Annotation*> out;
    for (const Annotation& a : annotations) {
        if (a.video_id == video_id) out.push_back(&a);
    }
    return out;
}

const VideoData* VideoDataset::find_video(int video_id) const {
    for (const VideoData& v : videos) {
        if (v.id == video_id) return &v;
    }
    return nullptr;
}

int VideoDataset::category_index(int category_id) const {
    for (size_t i = 0; i < categories.size(); ++i) {
        if (categories[i].id == category_id) return static_cast<int>(i);
    }
    return -1;
}

std::vector<Category> default_categories() {
    return {
        {1, "circle", {200, 60, 60}},
        {2, "rectangle", {60, 180, 70}},
        {3, "triangle", {60, 80, 220}},
    };
}

namespace {

struct ShapePattern {
    std::vector<std::pair<int, int>> offsets;  // (dr, dc) relative to center
    int extent = 0;                            // max |offset| component
};

ShapePattern make_pattern(int category_index, int size) {
    ShapePattern p;
    const int half = size / 2;
    switch (category_index) {
        case 0: {  // circle
            for (int dr = -half; dr <= half; ++dr) {
                for (int dc = -half; dc <= half; ++dc) {
                    if (dr * dr + dc * dc <= half * half) p.offsets.emplace_back(dr, dc);
                }
            }
            break;
        }
        case 1: {  // rectangle, 4:3-ish box
            const int hh = std::max(2, (size * 3) / 8);
            for (int dr = -hh; dr <= hh; ++dr) {
                for (int dc = -half; dc <= half; ++dc) p.offsets.emplace_back(dr, dc);
            }
            break;
        }
        default: {  // triangle pointing up
            for (int dr = 0; dr < size; ++dr) {
                const int row_half = dr / 2;
                for (int dc = -row_half; dc <= row_half; ++dc) {
                    p.offsets.emplace_back(dr - half, dc);
                }
            }
            break;
        }
    }
    for (auto [dr, dc] : p.offsets) {
        p.extent = std::max({p.extent, std::abs(dr), std::abs(dc)});
    }
    return p;
}

struct ShapeInstance {
    int category_index = 0;
    int size = 0;
    ShapePattern pattern;
    double start_r = 0.0, start_c = 0.0;
    double vel_r = 0.0, vel_c = 0.0;
    bool sinusoidal = false;
    bool sin_on_rows = false;
    double amplitude = 0.0, omega = 0.0, phase = 0.0;
    int entry_frame = 0;
};

std::pair<int, int> instance_center(const ShapeInstance& s, int t) {
    const double dt = t - s.entry_frame;
    double r = s.start_r + s.vel_r * dt;
    double c = s.start_c + s.vel_c * dt;
    if (s.sinusoidal) {
        const double wobble = s.amplitude * std::sin(s.omega * dt + s.phase);
        if (s.sin_on_rows)
            r += wobble;
        else
            c += wobble;
    }
    return {static_cast<int>(std::llround(r)), static_cast<int>(std::llround(c))};
}

void validate_config(const ScenarioConfig& cfg) {
    if (cfg.video_count < 1 || cfg.frames_per_video < 1) {
        throw config_error("scenario: video_count and frames_per_video must be >= 1");
    }
    if (cfg.width < 1 || cfg.height < 1) throw config_error("scenario: empty frame");
    if (cfg.instances_min < 1 || cfg.instances_max < cfg.instances_min) {
        throw config_error("scenario: invalid instance range");
    }
    if (cfg.shape_size_min < 4 || cfg.shape_size_max < cfg.shape_size_min) {
        throw config_error("scenario: invalid shape size range");
    }
    if (cfg.shape_size_max + 4 > std::min(cfg.width, cfg.height)) {
        throw config_error("scenario: shapes too large for the frame");
    }
    if (cfg.occluder_probability < 0 || cfg.occluder_probability > 1 ||
        cfg.late_entry_probability < 0 || cfg.late_entry_probability > 1) {
        throw config_error("scenario: probabilities must be in [0,1]");
    }
    if (cfg.speed_max < 0) throw config_error("scenario: negative speed");
}

// Trajectories of annotated instances stay separated for the whole clip:
// different categories never overlap (sibling occlusion is supplied by the
// aimed occluder only) and same-category lookalikes keep a wide berth so an
// appearance tracker cannot confuse them.
bool trajectories_clear(const ShapeInstance& s, const std::vector<ShapeInstance>& placed,
                        int frames) {
    for (const ShapeInstance& other : placed) {
        const double extra = other.category_index == s.category_index ? 20.0 : 4.0;
        const double min_gap = s.pattern.extent + other.pattern.extent + extra;
        for (int t = 0; t < frames; ++t) {
            const auto [r1, c1] = instance_center(s, t);
            const auto [r2, c2] = instance_center(other, t);
            const double dr = r1 - r2, dc = c1 - c2;
            if (dr * dr + dc * dc < min_gap * min_gap) return false;
        }
    }
    return true;
}

// Samples one instance; `clean` reports whether a non-colliding trajectory
// was found within the attempt budget.
ShapeInstance sample_instance(Rng& rng, const ScenarioConfig& cfg, int category_index, int frames,
                              const std::vector<ShapeInstance>& placed, bool& clean) {
    ShapeInstance s;
    s.category_index = category_index;
    // Same-category instances must differ in size, otherwise they are pixel
    // identical and no appearance model could tell them apart.
    s.size = static_cast<int>(rng.uniform_int(cfg.shape_size_min, cfg.shape_size_max));
    for (int attempt = 0; attempt < 12; ++attempt) {
        bool distinct = true;
        for (const ShapeInstance& other : placed) {
            if (other.category_index == category_index && std::abs(other.size - s.size) < 3) {
                distinct = false;
            }
        }
        if (distinct) break;
        s.size = static_cast<int>(rng.uniform_int(cfg.shape_size_min, cfg.shape_size_max));
    }
    s.pattern = make_pattern(s.category_index, s.size);
    const int margin = s.pattern.extent + 5;

    for (int attempt = 0; attempt < 60; ++attempt) {
        s.start_r = static_cast<double>(rng.uniform_int(margin, cfg.height - 1 - margin));
        s.start_c = static_cast<double>(rng.uniform_int(margin, cfg.width - 1 - margin));

        // Velocity signs point away from the nearer wall so instances drift
        // across the frame instead of sliding out of it.
        s.vel_r = static_cast<double>(rng.uniform_int(0, cfg.speed_max));
        s.vel_c = static_cast<double>(rng.uniform_int(0, cfg.speed_max));
        if (s.vel_r == 0.0 && s.vel_c == 0.0) s.vel_c = 1.0;
        if (s.start_r >= cfg.height / 2.0) s.vel_r = -s.vel_r;
        if (s.start_c >= cfg.width / 2.0) s.vel_c = -s.vel_c;
        s.sinusoidal = false;
        if (rng.coin(cfg.sinusoidal_probability)) {
            // Amplitude and period bounded so the per-frame step stays small.
            s.sinusoidal = true;
            s.sin_on_rows = rng.coin(0.5);
            s.amplitude = rng.uniform(2.0, 4.0);
            s.omega = 2.0 * 3.14159265358979323846 / rng.uniform(12.0, 24.0);
            s.phase = rng.uniform(0.0, 6.28318530717958647692);
        }
        clean = trajectories_clear(s, placed, frames);
        if (clean || attempt >= 40) break;
    }
    return s;
}

// Occluder aimed to pass over `victim` around frame t_cross. Spawns inside
// the frame so it is visible from frame 0; the high relative speed keeps the
// crossing short.
bool aim_occluder(ShapeInstance& occ, const ShapeInstance& victim, const ScenarioConfig& cfg,
                  int t_cross) {
    const auto [vr, vc] = instance_center(victim, t_cross);
    const int margin = occ.pattern.extent + 1;
    const double rel_needed = 3.5;
    static const double speeds[] = {4.0, -4.0, 5.0, -5.0, 3.0, -3.0};
    for (double sp : speeds) {
        if (std::abs(sp - victim.vel_c) < rel_needed) continue;
        const double start_c = vc - sp * t_cross;
        const double start_r = vr - occ.vel_r * t_cross;
        if (start_c < margin || start_c > cfg.width - 1 - margin) continue;
        if (start_r < margin || start_r > cfg.height - 1 - margin) continue;
        occ.vel_c = sp;
        occ.start_c = start_c;
        occ.start_r = start_r;
        return true;
    }
    return false;
}

}  // namespace

VideoDataset generate_dataset(const ScenarioConfig& cfg) {
    validate_config(cfg);
    VideoDataset ds;
    ds.width = cfg.width;
    ds.height = cfg.height;
    ds.categories = default_categories();

    const Rng base(cfg.rng_seed);
    for (int vid = 0; vid < cfg.video_count; ++vid) {
        const Rng video_rng = base.fork(static_cast<std::uint64_t>(vid) + 1);
        Rng inst_rng = video_rng.fork(1);
        Rng occ_rng = video_rng.fork(2);
        Rng late_rng = video_rng.fork(3);

        const int T = cfg.frames_per_video;
        std::vector<ShapeInstance> instances;
        const int count = static_cast<int>(inst_rng.uniform_int(cfg.instances_min, cfg.instances_max));
        // The first three instances cover distinct categories (in a seeded
        // random order); only later ones may repeat a color.
        int order[3] = {0, 1, 2};
        for (int i = 2; i > 0; --i) {
            std::swap(order[i], order[inst_rng.uniform_int(0, i)]);
        }
        for (int i = 0; i < count; ++i) {
            const int category = i < 3 ? order[i] : static_cast<int>(inst_rng.uniform_int(0, 2));
            bool clean = false;
            ShapeInstance s = sample_instance(inst_rng, cfg, category, T, instances, clean);
            // A crowded clip keeps a colliding sample only when the video
            // would otherwise fall short of the configured minimum.
            if (clean || static_cast<int>(instances.size()) < cfg.instances_min) {
                instances.push_back(std::move(s));
            }
        }

        // Late entry replaces the regular spawn: the instance first appears
        // after frame T/2, placed and slowed so it stays in frame to the end
        // and does not spawn on top of anything.
        for (size_t idx = 0; idx < instances.size(); ++idx) {
            ShapeInstance& s = instances[idx];
            if (!late_rng.coin(cfg.late_entry_probability)) continue;
            s.entry_frame =
                static_cast<int>(late_rng.uniform_int(T / 2 + 1, std::max(T / 2 + 1, (3 * T) / 4)));
            s.vel_r = std::clamp(s.vel_r, -1.0, 1.0);
            s.vel_c = std::clamp(s.vel_c, -1.0, 1.0);
            s.sinusoidal = false;
            const int reach = s.pattern.extent + (T - 1 - s.entry_frame) + 2;
            const int lo_r = std::min(reach, cfg.height / 2 - 1);
            const int lo_c = std::min(reach, cfg.width / 2 - 1);
            for (int attempt = 0; attempt < 20; ++attempt) {
                s.start_r = static_cast<double>(late_rng.uniform_int(lo_r, cfg.height - 1 - lo_r));
                s.start_c = static_cast<double>(late_rng.uniform_int(lo_c, cfg.width - 1 - lo_c));
                bool clear = true;
                for (size_t other = 0; other < instances.size(); ++other) {
                    if (other == idx) continue;
                    const auto [orr, oc] = instance_center(instances[other], s.entry_frame);
                    const double dr = s.start_r - orr;
                    const double dc = s.start_c - oc;
                    const double gap = s.pattern.extent + instances[other].pattern.extent + 2;
                    if (dr * dr + dc * dc < gap * gap) clear = false;
                }
                if (clear) break;
            }
        }

        // The occluder is scene furniture: rendered on top so it hides the
        // instances it crosses, but not itself a ground-truth instance.
        const int annotated = static_cast<int>(instances.size());
        if (occ_rng.coin(cfg.occluder_probability) && !instances.empty()) {
            ShapeInstance occ;
            // Never the same color as the instance it is aimed at.
            occ.category_index =
                (instances.front().category_index + 1 + occ_rng.uniform_int(0, 1)) % 3;
            occ.size = static_cast<int>(
                occ_rng.uniform_int(cfg.shape_size_min, cfg.shape_size_min + 2));
            occ.pattern = make_pattern(occ.category_index, occ.size);
            occ.vel_r = static_cast<double>(occ_rng.uniform_int(-1, 1));
            // Cross around 3/8 T or 5/8 T, away from evenly spaced key frames.
            const int t_cross = occ_rng.coin(0.5) ? (3 * T) / 8 : (5 * T) / 8;
            const ShapeInstance& victim = instances.front();
            if (aim_occluder(occ, victim, cfg, t_cross)) {
                instances.push_back(occ);  // drawn last: topmost
            }
        }

        VideoData video;
        video.id = vid;
        const int n = static_cast<int>(instances.size());
        std::vector<Annotation> anns(annotated);
        for (int i = 0; i < annotated; ++i) {
            anns[i].video_id = vid;
            anns[i].instance_id = i;
            anns[i].category_id = ds.categories[instances[i].category_index].id;
        }

        std::vector<bool> appeared(n, false), exited(n, false);
        for (int t = 0; t < T; ++t) {
            // Owner of each pixel: highest-z instance covering it.
            Grid<int> owner(cfg.height, cfg.width, -1);
            for (int i = 0; i < n; ++i) {
                const ShapeInstance& s = instances[i];
                if (t < s.entry_frame || exited[i]) continue;
                const auto [cr, cc] = instance_center(s, t);
                bool any_inside = false;
                for (auto [dr, dc] : s.pattern.offsets) {
                    const int r = cr + dr, c = cc + dc;
                    if (r < 0 || r >= cfg.height || c < 0 || c >= cfg.width) continue;
                    owner.at(r, c) = i;
                    any_inside = true;
                }
                if (any_inside) {
                    appeared[i] = true;
                } else if (appeared[i]) {
                    exited[i] = true;  // fully out of frame: gone for good
                }
            }

            Frame frame(t, cfg.height, cfg.width);
            std::vector<Bitmap> visible(annotated, Bitmap(cfg.height, cfg.width));
            for (int r = 0; r < cfg.height; ++r) {
                for (int c = 0; c < cfg.width; ++c) {
                    const int i = owner.at(r, c);
                    if (i < 0) continue;
                    const auto& color = ds.categories[instances[i].category_index].color;
                    std::uint8_t* px = frame.pixel(r, c);
                    px[0] = color[0];
                    px[1] = color[1];
                    px[2] = color[2];
                    if (i < annotated) visible[i].at(r, c) = 1;
                }
            }
            video.frames.push_back(std::move(frame));
            for (int i = 0; i < annotated; ++i) {
                anns[i].segmentations.push_back(rle_encode(visible[i]));
            }
        }

        ds.videos.push_back(std::move(video));
        for (Annotation& a : anns) ds.annotations.push_back(std::move(a));
    }
    return ds;
}

namespace {

json rle_to_json(const RleMask& m) {
    return json{{"size", {m.height, m.width}}, {"counts", m.counts}};
}

RleMask rle_from_json(const json& j, int height, int width, const std::string& path) {
    if (!j.is_object() || !j.contains("size") || !j.contains("counts")) {
        throw data_error(path + ": expected {\"size\":[H,W],\"counts\":[...]}");
    }
    RleMask m;
    m.height = j["size"].at(0).get<int>();
    m.width = j["size"].at(1).get<int>();
    if (m.height != height || m.width != width) {
        throw data_error(path + ": RLE size does not match dataset dimensions");
    }
    m.counts = j["counts"].get<std::vector<std::uint32_t>>();
    std::uint64_t sum = 0;
    for (std::uint32_t c : m.counts) sum += c;
    if (sum != static_cast<std::uint64_t>(height) * width) {
        throw data_error(path + ": counts sum " + std::to_string(sum) + " != " +
                         std::to_string(static_cast<std::uint64_t>(height) * width));
    }
    return m;
}

std::string frame_file_name(int video_id, int frame_index) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "frames/v%03d_f%03d.rgb", video_id, frame_index);
    return buf;
}

}  // namespace

void save_dataset(const VideoDataset& ds, const std::string& dir) {
    fs::create_directories(fs::path(dir) / "frames");
    json root;
    root["height"] = ds.height;
    root["width"] = ds.width;
    root["categories"] = json::array();
    for (const Category& c : ds.categories) {
        root["categories"].push_back({{"id", c.id}, {"name", c.name}, {"color", c.color}});
    }
    root["videos"] = json::array();
    root["annotations"] = json::array();
    for (const VideoData& v : ds.videos) {
        json jv;
        jv["id"] = v.id;
        jv["frame_count"] = v.frame_count();
        jv["frames"] = json::array();
        for (const Frame& f : v.frames) {
            const std::string rel = frame_file_name(v.id, f.index);
            jv["frames"].push_back(rel);
            std::ofstream out(fs::path(dir) / rel, std::ios::binary);
            out.write(reinterpret_cast<const char*>(f.rgb.data()),
                      static_cast<std::streamsize>(f.rgb.size()));
            if (!out) throw data_error("cannot write frame file " + rel);
        }
        root["videos"].push_back(std::move(jv));
    }
    for (const Annotation& a : ds.annotations) {
        json ja;
        ja["video_id"] = a.video_id;
        ja["instance_id"] = a.instance_id;
        ja["category_id"] = a.category_id;
        ja["segmentations"] = json::array();
        for (const RleMask& m : a.segmentations) {
            if (rle_is_empty(m))
                ja["segmentations"].push_back(nullptr);
            else
                ja["segmentations"].push_back(rle_to_json(m));
        }
        root["annotations"].push_back(std::move(ja));
    }
    std::ofstream out(fs::path(dir) / "dataset.json");
    out << root.dump(1) << "\n";
    if (!out) throw data_error("cannot write dataset.json under " + dir);
}

VideoDataset load_dataset(const std::string& path) {
    fs::path json_path(path);
    if (fs::is_directory(json_path)) json_path /= "dataset.json";
    std::ifstream in(json_path);
    if (!in) throw data_error("cannot open dataset file " + json_path.string());
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw data_error("dataset json parse error: " + std::string(e.what()));
    }

    VideoDataset ds;
    try {
        ds.height = root.at("height").get<int>();
        ds.width = root.at("width").get<int>();
        for (const json& jc : root.at("categories")) {
            Category c;
            c.id = jc.at("id").get<int>();
            c.name = jc.at("name").get<std::string>();
            const auto col = jc.at("color").get<std::vector<int>>();
            if (col.size() != 3) throw data_error("categories[].color: expected 3 components");
            for (int i = 0; i < 3; ++i) c.color[i] = static_cast<std::uint8_t>(col[i]);
            ds.categories.push_back(std::move(c));
        }
    } catch (const json::exception& e) {
        throw data_error("dataset header: " + std::string(e.what()));
    }

    const fs::path base = json_path.parent_path();
    const size_t frame_bytes = static_cast<size_t>(ds.height) * ds.width * 3;
    for (size_t vi = 0; vi < root.at("videos").size(); ++vi) {
        const json& jv = root["videos"][vi];
        const std::string where = "videos[" + std::to_string(vi) + "]";
        VideoData v;
        try {
            v.id = jv.at("id").get<int>();
        } catch (const json::exception& e) {
            throw data_error(where + ": " + e.what());
        }
        const auto files = jv.at("frames").get<std::vector<std::string>>();
        if (jv.at("frame_count").get<int>() != static_cast<int>(files.size())) {
            throw data_error(where + ".frame_count does not match frames list length");
        }
        for (size_t fi = 0; fi < files.size(); ++fi) {
            const fs::path fp = base / files[fi];
            std::ifstream fin(fp, std::ios::binary);
            if (!fin) throw data_error(where + ": missing frame file " + fp.string());
            Frame frame(static_cast<int>(fi), ds.height, ds.width);
            fin.read(reinterpret_cast<char*>(frame.rgb.data()),
                     static_cast<std::streamsize>(frame_bytes));
            if (static_cast<size_t>(fin.gcount()) != frame_bytes) {
                throw data_error(where + ": frame file " + fp.string() + " truncated");
            }
            v.frames.push_back(std::move(frame));
        }
        ds.videos.push_back(std::move(v));
    }

    for (size_t ai = 0; ai < root.at("annotations").size(); ++ai) {
        const json& ja = root["annotations"][ai];
        const std::string where = "annotations[" + std::to_string(ai) + "]";
        Annotation a;
        try {
            a.video_id = ja.at("video_id").get<int>();
            a.instance_id = ja.at("instance_id").get<int>();
            a.category_id = ja.at("category_id").get<int>();
        } catch (const json::exception& e) {
            throw data_error(where + ": " + e.what());
        }
        if (ds.category_index(a.category_id) < 0) {
            throw data_error(where + ".category_id: unknown category " +
                             std::to_string(a.category_id));
        }
        const VideoData* video = ds.find_video(a.video_id);
        if (video == nullptr) {
            throw data_error(where + ".video_id: unknown video " + std::to_string(a.video_id));
        }
        const json& segs = ja.at("segmentations");
        if (static_cast<int>(segs.size()) != video->frame_count()) {
            throw data_error(where + ".segmentations: length " + std::to_string(segs.size()) +
                             " != video frame count " + std::to_string(video->frame_count()));
        }
        for (size_t t = 0; t < segs.size(); ++t) {
            const std::string seg_path = where + ".segmentations[" + std::to_string(t) + "]";
            if (segs[t].is_null()) {
                a.segmentations.push_back(rle_empty(ds.height, ds.width));
            } else {
                a.segmentations.push_back(rle_from_json(segs[t], ds.height, ds.width, seg_path));
            }
        }
        ds.annotations.push_back(std::move(a));
    }
    return ds;
}

}  // namespace seqvis
