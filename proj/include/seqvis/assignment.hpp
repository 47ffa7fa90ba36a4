#pragma once

#include <limits>
#include <vector>

namespace seqvis {

// Maximum-weight bipartite assignment (Jonker-Volgenant style Hungarian on a
// padded square matrix). weights[r][c] >= 0; rows and columns beyond the
// rectangular input behave as weight 0. Returns row_to_col of size
// weights.size() with -1 for rows matched to padding columns.
inline std::vector<int> max_weight_assignment(const std::vector<std::vector<double>>& weights) {
    const int rows = static_cast<int>(weights.size());
    if (rows == 0) return {};
    const int cols = static_cast<int>(weights[0].size());
    const int n = std::max(rows, cols);

    double max_w = 0.0;
    for (const auto& row : weights) {
        for (double w : row) max_w = std::max(max_w, w);
    }
    // Minimize cost = max_w - weight; padding cells cost max_w.
    auto cost = [&](int r, int c) -> double {
        if (r >= rows || c >= cols) return max_w;
        return max_w - weights[r][c];
    };

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }

    std::vector<int> row_to_col(rows, -1);
    for (int j = 1; j <= n; ++j) {
        const int i = p[j];
        if (i >= 1 && i <= rows && j <= cols) row_to_col[i - 1] = j - 1;
    }
    return row_to_col;
}

}  // namespace seqvis
