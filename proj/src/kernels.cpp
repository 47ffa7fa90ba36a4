#include "seqvis/kernels.hpp"

#include <cmath>

namespace seqvis {

namespace {

struct FootprintPixel {
    std::int16_t r, c;
    std::uint8_t rgb[3];
};

// Instance footprint of one memory entry together with the remembered
// appearance under it.
struct EntryFootprint {
    int entry_index = 0;
    std::vector<FootprintPixel> pixels;
};

std::vector<EntryFootprint> gather_footprints(const std::vector<MemoryEntry>& entries,
                                              int instance) {
    std::vector<EntryFootprint> out;
    for (size_t e = 0; e < entries.size(); ++e) {
        const MemoryEntry& entry = entries[e];
        if (instance >= static_cast<int>(entry.masks.size())) continue;
        const RleMask& mask = entry.masks[instance];
        if (rle_is_empty(mask)) continue;
        EntryFootprint fp;
        fp.entry_index = static_cast<int>(e);
        const Bitmap bitmap = rle_decode(mask);
        for (int r = 0; r < bitmap.height; ++r) {
            for (int c = 0; c < bitmap.width; ++c) {
                if (!bitmap.at(r, c)) continue;
                const std::uint8_t* px = entry.appearance.pixel(r, c);
                fp.pixels.push_back({static_cast<std::int16_t>(r), static_cast<std::int16_t>(c),
                                     {px[0], px[1], px[2]}});
            }
        }
        out.push_back(std::move(fp));
    }
    return out;
}

// Total order on candidates: smaller normalized score first (exact rational
// comparison), then the smaller displacement (a still or slowly moving
// instance beats an equally good match farther away), then the more recent
// memory entry, then (dy, dx).
bool better(const TranslationMatch& a, const TranslationMatch& b) {
    if (!a.found) return false;
    if (!b.found) return true;
    const auto lhs = static_cast<unsigned __int128>(a.cost_total) * b.area;
    const auto rhs = static_cast<unsigned __int128>(b.cost_total) * a.area;
    if (lhs != rhs) return lhs < rhs;
    const int da = a.dy * a.dy + a.dx * a.dx;
    const int db = b.dy * b.dy + b.dx * b.dx;
    if (da != db) return da < db;
    if (a.entry_index != b.entry_index) return a.entry_index > b.entry_index;
    if (a.dy != b.dy) return a.dy < b.dy;
    return a.dx < b.dx;
}

// Scores one candidate translation. Gives up early once the cost provably
// cannot pass tau or beat `best`.
TranslationMatch score_candidate(const EntryFootprint& fp, const Frame& query, int dy, int dx,
                                 std::uint64_t tau_total_bound, const TranslationMatch& best) {
    TranslationMatch cand;
    cand.entry_index = fp.entry_index;
    cand.dy = dy;
    cand.dx = dx;
    const std::uint64_t total_pixels = fp.pixels.size();
    std::uint64_t cost = 0, area = 0;
    for (const FootprintPixel& p : fp.pixels) {
        const int qr = p.r + dy, qc = p.c + dx;
        if (qr < 0 || qr >= query.height || qc < 0 || qc >= query.width) continue;
        const std::uint8_t* q = query.pixel(qr, qc);
        const int d0 = static_cast<int>(p.rgb[0]) - q[0];
        const int d1 = static_cast<int>(p.rgb[1]) - q[1];
        const int d2 = static_cast<int>(p.rgb[2]) - q[2];
        cost += static_cast<std::uint64_t>(d0 * d0 + d1 * d1 + d2 * d2);
        ++area;
        if (best.found) {
            // cost only grows and area is capped by total_pixels, so once
            // this holds the candidate's score is strictly worse than best's
            // and no tie-break can save it.
            if (static_cast<unsigned __int128>(cost) * best.area >
                static_cast<unsigned __int128>(best.cost_total) * total_pixels) {
                return cand;  // found=false
            }
        }
        if (cost > tau_total_bound) {
            return cand;
        }
    }
    if (area == 0) return cand;
    cand.cost_total = cost;
    cand.area = area;
    cand.found = true;
    return cand;
}

TranslationMatch search(const std::vector<MemoryEntry>& entries, int instance, const Frame& query,
                        int radius, double tau, bool parallel) {
    const std::vector<EntryFootprint> footprints = gather_footprints(entries, instance);
    if (footprints.empty()) return {};

    const int span = 2 * radius + 1;
    const int64_t rows = static_cast<int64_t>(footprints.size()) * span;
    TranslationMatch global_best;

#pragma omp parallel if (parallel)
    {
        TranslationMatch local_best;
#pragma omp for schedule(static) nowait
        for (int64_t row = 0; row < rows; ++row) {
            const EntryFootprint& fp = footprints[row / span];
            const int dy = static_cast<int>(row % span) - radius;
            const std::uint64_t tau_bound = static_cast<std::uint64_t>(
                std::floor(tau * 3.0 * static_cast<double>(fp.pixels.size())));
            for (int dx = -radius; dx <= radius; ++dx) {
                TranslationMatch cand = score_candidate(fp, query, dy, dx, tau_bound, local_best);
                if (!cand.found) continue;
                // tau applies to the in-bounds footprint.
                if (static_cast<double>(cand.cost_total) >
                    tau * 3.0 * static_cast<double>(cand.area)) {
                    continue;
                }
                if (better(cand, local_best)) local_best = cand;
            }
        }
#pragma omp critical(seqvis_translation_merge)
        {
            if (better(local_best, global_best)) global_best = local_best;
        }
    }
    return global_best;
}

}  // namespace

TranslationMatch best_translation(const std::vector<MemoryEntry>& entries, int instance,
                                  const Frame& query, int radius, double tau) {
    return search(entries, instance, query, radius, tau, true);
}

TranslationMatch best_translation_serial(const std::vector<MemoryEntry>& entries, int instance,
                                         const Frame& query, int radius, double tau) {
    return search(entries, instance, query, radius, tau, false);
}

}  // namespace seqvis
