#pragma once

#include "hsbrst/rational.hpp"

#include <cstddef>
#include <vector>

namespace hsbrst {

/// One consistent solution of M x = b over Q(i), if any (free variables 0).
struct LinearSolution {
    bool solvable = false;
    std::vector<GaussianRational> x;
};

/// Dense exact Gauss-Jordan elimination on the augmented matrix [M | b].
inline LinearSolution solve_exact(std::vector<std::vector<GaussianRational>> aug, std::size_t ncols) {
    const std::size_t nrows = aug.size();
    std::vector<std::size_t> pivot_col_of_row;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
        std::size_t piv = row;
        while (piv < nrows && aug[piv][col].is_zero()) ++piv;
        if (piv == nrows) continue;
        std::swap(aug[piv], aug[row]);
        GaussianRational inv = GaussianRational(1) / aug[row][col];
        for (std::size_t j = col; j <= ncols; ++j) aug[row][j] = aug[row][j] * inv;
        for (std::size_t r = 0; r < nrows; ++r) {
            if (r == row || aug[r][col].is_zero()) continue;
            GaussianRational f = aug[r][col];
            for (std::size_t j = col; j <= ncols; ++j) aug[r][j] = aug[r][j] - f * aug[row][j];
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    // inconsistent when a zero row has nonzero rhs
    for (std::size_t r = row; r < nrows; ++r)
        if (!aug[r][ncols].is_zero()) return {};
    LinearSolution sol;
    sol.solvable = true;
    sol.x.assign(ncols, GaussianRational(0));
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r)
        sol.x[pivot_col_of_row[r]] = aug[r][ncols];
    return sol;
}

} // namespace hsbrst
