#pragma once

#include <cstdint>
#include <vector>

namespace seqvis {

// Dense H x W grid, row-major storage.
template <typename T>
struct Grid {
    int height = 0;
    int width = 0;
    std::vector<T> data;

    Grid() = default;
    Grid(int h, int w, T fill = T{}) : height(h), width(w), data(static_cast<size_t>(h) * w, fill) {}

    T& at(int r, int c) { return data[static_cast<size_t>(r) * width + c]; }
    const T& at(int r, int c) const { return data[static_cast<size_t>(r) * width + c]; }

    bool in_bounds(int r, int c) const { return r >= 0 && r < height && c >= 0 && c < width; }
    size_t size() const { return data.size(); }

    bool operator==(const Grid&) const = default;
};

using Bitmap = Grid<std::uint8_t>;
using ProbGrid = Grid<double>;

}  // namespace seqvis
