#pragma once

#include <vector>

#include "trophom/sparse_matrix.hpp"

namespace trophom {

// Diagonal of the Smith normal form of M: d_1 | d_2 | ... | d_r followed by
// zeros, length min(rows, cols). All entries non-negative, exact.
//
// Elimination runs on machine integers with overflow checks and restarts on
// arbitrary-precision arithmetic if a coefficient ever outgrows them.
std::vector<Int> smith_diagonal(const SparseIntMatrix& m, const ProgressFn& progress = {});

inline std::size_t rank_from_diagonal(const std::vector<Int>& diagonal) {
    std::size_t r = 0;
    for (const Int& d : diagonal)
        if (d != 0) ++r;
    return r;
}

}  // namespace trophom
