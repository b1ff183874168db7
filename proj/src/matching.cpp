#include "mvd/matching.hpp"

#include <algorithm>

namespace mvd {

// Square min-cost assignment with rational potentials (the classic O(k^3)
// algorithm); costs must be finite.
static Rat minCostAssignment(const std::vector<std::vector<Rat>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return 0;
    Rat inf = 1;
    for (const auto& row : cost)
        for (const auto& c : row) inf += (c < 0 ? -c : c);

    std::vector<Rat> u(n + 1, Rat(0)), v(n + 1, Rat(0));
    std::vector<int> matchedRow(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        matchedRow[0] = i;
        int j0 = 0;
        std::vector<Rat> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const int i0 = matchedRow[j0];
            int j1 = -1;
            Rat delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const Rat cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
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
                    u[matchedRow[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (matchedRow[j0] != 0);
        do {
            const int j1 = way[j0];
            matchedRow[j0] = matchedRow[j1];
            j0 = j1;
        } while (j0);
    }
    Rat total = 0;
    for (int j = 1; j <= n; ++j) total += cost[matchedRow[j] - 1][j - 1];
    return total;
}

Rat maxWeightMatching(const std::vector<std::vector<Rat>>& weights) {
    const int rows = static_cast<int>(weights.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(weights[0].size());
    const int k = std::max(rows, cols);
    if (k == 0) return 0;
    // Pad to square; clamp at zero so skipping a pair is always available,
    // then minimize the negated matrix.
    std::vector<std::vector<Rat>> cost(k, std::vector<Rat>(k, Rat(0)));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (weights[i][j] > 0) cost[i][j] = -weights[i][j];
    return -minCostAssignment(cost);
}

}  // namespace mvd
