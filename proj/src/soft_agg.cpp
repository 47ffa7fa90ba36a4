#include "seqvis/soft_agg.hpp"

#include "seqvis/errors.hpp"

namespace seqvis {

namespace {

inline double clamp_prob(double v) {
    if (v < kProbEps) return kProbEps;
    if (v > 1.0 - kProbEps) return 1.0 - kProbEps;
    return v;
}

inline void aggregate_pixel(const ProbMapSet& maps, size_t px, std::vector<ProbGrid>& out) {
    const int n = maps.instance_count();
    if (n == 0) {
        out[0].data[px] = 1.0;
        return;
    }
    double background = 1.0;
    double odds_sum = 0.0;
    for (int o = 0; o < n; ++o) {
        const double m = clamp_prob(maps.maps[o].data[px]);
        background *= 1.0 - m;
        const double odds = m / (1.0 - m);
        out[o + 1].data[px] = odds;
        odds_sum += odds;
    }
    const double bg_odds = background / (1.0 - background);
    odds_sum += bg_odds;
    out[0].data[px] = bg_odds / odds_sum;
    for (int o = 1; o <= n; ++o) out[o].data[px] /= odds_sum;
}

}  // namespace

std::vector<ProbGrid> soft_aggregate(const ProbMapSet& maps) {
    std::vector<ProbGrid> out(maps.instance_count() + 1, ProbGrid(maps.height, maps.width));
    const std::int64_t total = static_cast<std::int64_t>(maps.height) * maps.width;
#pragma omp parallel for schedule(static)
    for (std::int64_t px = 0; px < total; ++px) {
        aggregate_pixel(maps, static_cast<size_t>(px), out);
    }
    return out;
}

std::vector<ProbGrid> soft_aggregate_serial(const ProbMapSet& maps) {
    std::vector<ProbGrid> out(maps.instance_count() + 1, ProbGrid(maps.height, maps.width));
    const size_t total = static_cast<size_t>(maps.height) * maps.width;
    for (size_t px = 0; px < total; ++px) aggregate_pixel(maps, px, out);
    return out;
}

LabeledFrame argmax_labeling(const std::vector<ProbGrid>& aggregated) {
    if (aggregated.empty()) throw data_error("argmax_labeling: no grids");
    const int h = aggregated[0].height;
    const int w = aggregated[0].width;
    const int instances = static_cast<int>(aggregated.size()) - 1;
    std::vector<Bitmap> bitmaps(instances, Bitmap(h, w));
    const size_t total = static_cast<size_t>(h) * w;
    for (size_t px = 0; px < total; ++px) {
        int best = 0;
        for (int i = 1; i <= instances; ++i) {
            if (aggregated[i].data[px] > aggregated[best].data[px]) best = i;
        }
        if (best > 0) bitmaps[best - 1].data[px] = 1;
    }
    LabeledFrame out;
    out.reserve(instances);
    for (const Bitmap& b : bitmaps) out.push_back(rle_encode(b));
    return out;
}

}  // namespace seqvis
