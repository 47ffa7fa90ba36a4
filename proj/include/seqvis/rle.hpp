#pragma once

#include <cstdint>
#include <vector>

#include "seqvis/grid.hpp"

namespace seqvis {

// Run-length encoded binary mask.
//
// Wire convention (also used by the JSON form {"size":[H,W],"counts":[...]}):
// pixels are visited in column-major order (column 0 top to bottom, then
// column 1, ...), counts alternate runs of 0s and 1s and always begin with
// the run of 0s, which may have length zero. sum(counts) == height * width.
struct RleMask {
    int height = 0;
    int width = 0;
    std::vector<std::uint32_t> counts;

    bool operator==(const RleMask&) const = default;
};

// Encodes a bitmap. Output is canonical: no zero-length runs except a
// possible leading zero.
RleMask rle_encode(const Bitmap& bitmap);

// Decodes to a bitmap. Accepts non-canonical counts (interior zero runs) but
// throws data_error when sum(counts) != height * width.
Bitmap rle_decode(const RleMask& mask);

// Re-encodes into canonical form without materializing the bitmap.
RleMask rle_canonicalize(const RleMask& mask);

// Number of 1-pixels.
std::uint64_t rle_area(const RleMask& mask);

// |a AND b| in pixels. Dimensions must match.
std::uint64_t rle_intersection_area(const RleMask& a, const RleMask& b);

// |a AND b| / |a OR b|. Returns 0 when both masks are empty. Throws
// data_error on dimension mismatch.
double frame_iou(const RleMask& a, const RleMask& b);

// An empty (all-zero) mask of the given size.
RleMask rle_empty(int height, int width);

bool rle_is_empty(const RleMask& mask);

// Mask pixels that touch the outside: 4-adjacent to a 0-pixel or to the
// frame edge.
Bitmap mask_contour(const Bitmap& mask);

// Chebyshev dilation by `radius` (square structuring element).
Bitmap chebyshev_dilate(const Bitmap& mask, int radius);

Bitmap chebyshev_erode(const Bitmap& mask, int radius);

// Pixels within Chebyshev distance `tolerance` of the mask's contour.
RleMask boundary_band(const RleMask& mask, int tolerance);

}  // namespace seqvis
