#include "mvd/exact_lp.hpp"

#include <cstddef>

#include "mvd/errors.hpp"

namespace mvd {

Rat simplexMax(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
               const std::vector<Rat>& c) {
    const std::size_t rows = A.size();
    const std::size_t vars = c.size();
    for (const auto& bi : b)
        if (bi < 0) throw Error("simplexMax requires b >= 0");

    // Tableau: rows x (vars + rows + 1), slack basis is feasible.
    std::vector<std::vector<Rat>> t(rows, std::vector<Rat>(vars + rows + 1, Rat(0)));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < vars; ++j) t[i][j] = A[i][j];
        t[i][vars + i] = 1;
        t[i].back() = b[i];
    }
    std::vector<Rat> obj(vars + rows + 1, Rat(0));
    for (std::size_t j = 0; j < vars; ++j) obj[j] = c[j];
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) basis[i] = vars + i;
    Rat objValue = 0;

    while (true) {
        // Bland: lowest-index column with positive reduced cost
        std::size_t pivotCol = obj.size();
        for (std::size_t j = 0; j + 1 < obj.size(); ++j) {
            if (obj[j] > 0) {
                pivotCol = j;
                break;
            }
        }
        if (pivotCol == obj.size()) return objValue;

        // Bland: lowest basis index among minimum-ratio rows
        std::size_t pivotRow = rows;
        Rat bestRatio;
        for (std::size_t i = 0; i < rows; ++i) {
            if (t[i][pivotCol] > 0) {
                Rat ratio = t[i].back() / t[i][pivotCol];
                if (pivotRow == rows || ratio < bestRatio ||
                    (ratio == bestRatio && basis[i] < basis[pivotRow])) {
                    pivotRow = i;
                    bestRatio = ratio;
                }
            }
        }
        if (pivotRow == rows) throw Error("simplexMax: unbounded objective");

        const Rat pivot = t[pivotRow][pivotCol];
        for (auto& x : t[pivotRow]) x /= pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pivotRow) continue;
            const Rat factor = t[i][pivotCol];
            if (factor == 0) continue;
            for (std::size_t j = 0; j < t[i].size(); ++j) t[i][j] -= factor * t[pivotRow][j];
        }
        const Rat objFactor = obj[pivotCol];
        if (objFactor != 0) {
            for (std::size_t j = 0; j + 1 < obj.size(); ++j) obj[j] -= objFactor * t[pivotRow][j];
            objValue += objFactor * t[pivotRow].back();
        }
        basis[pivotRow] = pivotCol;
    }
}

}  // namespace mvd
