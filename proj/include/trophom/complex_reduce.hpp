#pragma once

#include <vector>

#include "trophom/sparse_matrix.hpp"

namespace trophom {

struct ReducedComplex {
    std::vector<std::size_t> counts;          // cells per dimension after reduction
    std::vector<SparseIntMatrix> boundaries;  // boundaries[k]: C_k -> C_{k-1}; [0] zero map
};

// Homology-preserving reduction of a bounded chain complex of free abelian
// groups: repeatedly cancels a pair of cells joined by a +-1 incidence,
// performing the induced Gaussian update on d_k and plain row/column
// deletions on d_{k+1} and d_{k-1}. Pairs are chosen by Markowitz cost, so
// collapses that cause no fill-in cascade first. Stops when no unit
// incidence remains; the leftover complex has the same homology.
//
// boundaries/counts follow the QuotientComplex convention: counts[k] cells
// in dimension k, boundaries[k] of shape counts[k-1] x counts[k], and
// boundaries[0] the zero map out of dimension 0.
ReducedComplex reduce_complex(const std::vector<SparseIntMatrix>& boundaries,
                              const std::vector<std::size_t>& counts,
                              const ProgressFn& progress = {});

}  // namespace trophom
