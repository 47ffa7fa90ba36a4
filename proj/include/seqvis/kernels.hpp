#pragma once

#include <cstdint>
#include <vector>

#include "seqvis/dataset.hpp"
#include "seqvis/memory_pool.hpp"

namespace seqvis {

// Best integer translation of one instance's memory mask onto a query frame.
// Scores are compared as exact rationals (raw squared-difference total over
// footprint area), so the search result is independent of iteration order
// and thread count.
struct TranslationMatch {
    bool found = false;
    std::uint64_t cost_total = 0;  // sum of per-pixel squared channel diffs
    std::uint64_t area = 1;        // in-bounds footprint pixels
    int entry_index = 0;
    int dy = 0;
    int dx = 0;

    double normalized_score() const {
        return static_cast<double>(cost_total) / (3.0 * static_cast<double>(area));
    }
};

// Scans every memory entry holding a nonempty mask for `instance` and every
// translation within Chebyshev radius `radius`. A candidate's score is the
// mean squared per-channel difference between the entry appearance under the
// mask and the query under the translated mask, over in-bounds footprint
// pixels; candidates whose footprint lands fully outside are skipped.
// Returns the best candidate with score <= tau, preferring lower
// (entry_index, dy, dx) on exact ties.
TranslationMatch best_translation(const std::vector<MemoryEntry>& entries, int instance,
                                  const Frame& query, int radius, double tau);

// Serial twin kept as a test and benchmark reference.
TranslationMatch best_translation_serial(const std::vector<MemoryEntry>& entries, int instance,
                                         const Frame& query, int radius, double tau);

}  // namespace seqvis
