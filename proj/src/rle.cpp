#include "seqvis/rle.hpp"

#include <string>

#include "seqvis/errors.hpp"

namespace seqvis {

namespace {

std::uint64_t counts_sum(const RleMask& m) {
    std::uint64_t s = 0;
    for (std::uint32_t c : m.counts) s += c;
    return s;
}

void check_sum(const RleMask& m) {
    const std::uint64_t expect = static_cast<std::uint64_t>(m.height) * m.width;
    const std::uint64_t got = counts_sum(m);
    if (got != expect) {
        throw data_error("rle decode: counts sum " + std::to_string(got) + " != " +
                         std::to_string(expect) + " for size [" + std::to_string(m.height) + "," +
                         std::to_string(m.width) + "]");
    }
}

// Walks runs of one mask, skipping zero-length runs.
struct RunCursor {
    const std::vector<std::uint32_t>& counts;
    size_t idx = 0;
    std::uint64_t remaining = 0;

    explicit RunCursor(const RleMask& m) : counts(m.counts) {
        while (idx < counts.size() && counts[idx] == 0) ++idx;
        if (idx < counts.size()) remaining = counts[idx];
    }

    bool value() const { return idx % 2 == 1; }

    void advance(std::uint64_t n) {
        remaining -= n;
        while (remaining == 0 && idx + 1 < counts.size()) {
            ++idx;
            remaining = counts[idx];
        }
    }
};

}  // namespace

RleMask rle_encode(const Bitmap& bitmap) {
    RleMask out;
    out.height = bitmap.height;
    out.width = bitmap.width;
    std::uint32_t run = 0;
    std::uint8_t cur = 0;
    for (int c = 0; c < bitmap.width; ++c) {
        for (int r = 0; r < bitmap.height; ++r) {
            const std::uint8_t v = bitmap.at(r, c) ? 1 : 0;
            if (v == cur) {
                ++run;
            } else {
                out.counts.push_back(run);
                run = 1;
                cur = v;
            }
        }
    }
    out.counts.push_back(run);
    return out;
}

Bitmap rle_decode(const RleMask& mask) {
    check_sum(mask);
    Bitmap out(mask.height, mask.width);
    int r = 0, c = 0;
    bool value = false;
    for (std::uint32_t count : mask.counts) {
        for (std::uint32_t i = 0; i < count; ++i) {
            out.at(r, c) = value ? 1 : 0;
            if (++r == mask.height) {
                r = 0;
                ++c;
            }
        }
        value = !value;
    }
    return out;
}

RleMask rle_canonicalize(const RleMask& mask) {
    check_sum(mask);
    RleMask out;
    out.height = mask.height;
    out.width = mask.width;
    // Merge runs across zero-length entries, preserving the leading-zeros rule.
    std::uint64_t run = 0;
    bool value = false;
    bool cur = false;
    for (std::uint32_t count : mask.counts) {
        if (count > 0) {
            if (value == cur) {
                run += count;
            } else {
                out.counts.push_back(static_cast<std::uint32_t>(run));
                run = count;
                cur = value;
            }
        }
        value = !value;
    }
    out.counts.push_back(static_cast<std::uint32_t>(run));
    return out;
}

std::uint64_t rle_area(const RleMask& mask) {
    std::uint64_t area = 0;
    for (size_t i = 1; i < mask.counts.size(); i += 2) area += mask.counts[i];
    return area;
}

std::uint64_t rle_intersection_area(const RleMask& a, const RleMask& b) {
    if (a.height != b.height || a.width != b.width) {
        throw data_error("rle intersection: dimension mismatch");
    }
    const std::uint64_t total = static_cast<std::uint64_t>(a.height) * a.width;
    RunCursor ca(a), cb(b);
    std::uint64_t pos = 0, inter = 0;
    while (pos < total) {
        const std::uint64_t step = ca.remaining < cb.remaining ? ca.remaining : cb.remaining;
        if (step == 0) throw data_error("rle intersection: counts shorter than mask size");
        if (ca.value() && cb.value()) inter += step;
        ca.advance(step);
        cb.advance(step);
        pos += step;
    }
    return inter;
}

double frame_iou(const RleMask& a, const RleMask& b) {
    const std::uint64_t inter = rle_intersection_area(a, b);
    const std::uint64_t uni = rle_area(a) + rle_area(b) - inter;
    if (uni == 0) return 0.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

RleMask rle_empty(int height, int width) {
    RleMask m;
    m.height = height;
    m.width = width;
    m.counts = {static_cast<std::uint32_t>(height * width)};
    return m;
}

bool rle_is_empty(const RleMask& mask) { return rle_area(mask) == 0; }

Bitmap mask_contour(const Bitmap& mask) {
    Bitmap out(mask.height, mask.width);
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            if (!mask.at(r, c)) continue;
            const bool edge = r == 0 || r == mask.height - 1 || c == 0 || c == mask.width - 1;
            if (edge || !mask.at(r - 1, c) || !mask.at(r + 1, c) || !mask.at(r, c - 1) ||
                !mask.at(r, c + 1)) {
                out.at(r, c) = 1;
            }
        }
    }
    return out;
}

Bitmap chebyshev_dilate(const Bitmap& mask, int radius) {
    if (radius <= 0) return mask;
    // Separable max filter: rows then columns.
    Bitmap tmp(mask.height, mask.width);
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            const int lo = c - radius < 0 ? 0 : c - radius;
            const int hi = c + radius >= mask.width ? mask.width - 1 : c + radius;
            std::uint8_t v = 0;
            for (int k = lo; k <= hi && !v; ++k) v = mask.at(r, k);
            tmp.at(r, c) = v;
        }
    }
    Bitmap out(mask.height, mask.width);
    for (int c = 0; c < mask.width; ++c) {
        for (int r = 0; r < mask.height; ++r) {
            const int lo = r - radius < 0 ? 0 : r - radius;
            const int hi = r + radius >= mask.height ? mask.height - 1 : r + radius;
            std::uint8_t v = 0;
            for (int k = lo; k <= hi && !v; ++k) v = tmp.at(k, c);
            out.at(r, c) = v;
        }
    }
    return out;
}

Bitmap chebyshev_erode(const Bitmap& mask, int radius) {
    if (radius <= 0) return mask;
    // Outside the frame counts as background, so erosion shrinks at edges.
    Bitmap inv(mask.height, mask.width);
    for (size_t i = 0; i < mask.data.size(); ++i) inv.data[i] = mask.data[i] ? 0 : 1;
    Bitmap grown = chebyshev_dilate(inv, radius);
    Bitmap out(mask.height, mask.width);
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            const bool at_edge = r < radius || r >= mask.height - radius || c < radius ||
                                 c >= mask.width - radius;
            out.at(r, c) = (!grown.at(r, c) && !at_edge) ? 1 : 0;
        }
    }
    return out;
}

RleMask boundary_band(const RleMask& mask, int tolerance) {
    const Bitmap bitmap = rle_decode(mask);
    return rle_encode(chebyshev_dilate(mask_contour(bitmap), tolerance));
}

}  // namespace seqvis
