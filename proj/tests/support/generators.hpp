// Seeded random fixtures shared by the test suites.
#pragma once

#include <vector>

#include "seqvis/grid.hpp"
#include "seqvis/reduction.hpp"
#include "seqvis/rle.hpp"
#include "seqvis/rng.hpp"
#include "seqvis/sequence.hpp"

namespace seqvis::testgen {

inline Bitmap random_bitmap(Rng& rng, int h, int w, double density) {
    Bitmap b(h, w);
    for (auto& v : b.data) v = rng.coin(density) ? 1 : 0;
    return b;
}

// A filled random rectangle; more mask-like than independent pixels.
inline Bitmap random_blob(Rng& rng, int h, int w) {
    Bitmap b(h, w);
    const int r0 = static_cast<int>(rng.uniform_int(0, h - 1));
    const int c0 = static_cast<int>(rng.uniform_int(0, w - 1));
    const int r1 = static_cast<int>(rng.uniform_int(r0, h - 1));
    const int c1 = static_cast<int>(rng.uniform_int(c0, w - 1));
    for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) b.at(r, c) = 1;
    }
    return b;
}

inline RleMask random_blob_mask(Rng& rng, int h, int w) { return rle_encode(random_blob(rng, h, w)); }

// A mask track with occasional empty frames.
inline std::vector<RleMask> random_track(Rng& rng, int frames, int h, int w,
                                         double empty_probability = 0.25) {
    std::vector<RleMask> masks;
    for (int t = 0; t < frames; ++t) {
        masks.push_back(rng.coin(empty_probability) ? rle_empty(h, w)
                                                    : random_blob_mask(rng, h, w));
    }
    return masks;
}

inline ScoredSequence random_scored_sequence(Rng& rng, int key_frame, int slot, int frames, int h,
                                             int w) {
    ScoredSequence s;
    s.score = rng.uniform();
    s.class_index = static_cast<int>(rng.uniform_int(0, 2));
    s.key_frame = key_frame;
    s.slot = slot;
    s.masks = random_track(rng, frames, h, w);
    return s;
}

}  // namespace seqvis::testgen
