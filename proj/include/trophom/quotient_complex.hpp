#pragma once

#include <cstddef>
#include <vector>

#include "trophom/sparse_matrix.hpp"
#include "trophom/subset_chain.hpp"

namespace trophom {

// Delta-complex structure on (subdivided boundary of the p-simplex) / G,
// for G a permutation group on the p+1 vertices. Simplices are stored as
// canonical orbit representatives, one list per dimension 0..p-1; boundaries
// carry the signed incidence of orbit classes.
//
// level 1 subdivides the boundary barycentrically once (simplices are chains
// of nonempty proper subsets of {0..p}); level 2 subdivides twice (chains of
// level-1 chains).
struct QuotientComplex {
    int p = 0;
    int level = 1;
    PermGroup group;

    // level 1: simplices[k][j] is the j-th k-dimensional orbit representative.
    std::vector<std::vector<SubsetChain>> simplices;
    // level 2: a k-simplex is a flag of k+1 level-1 chains.
    std::vector<std::vector<std::vector<SubsetChain>>> simplices2;

    // boundaries[k] maps dimension k to k-1 (k >= 1); boundaries[0] is the
    // zero map out of dimension 0.
    std::vector<SparseIntMatrix> boundaries;

    int dim() const { return p - 1; }
    std::size_t count(int k) const;
    std::vector<std::size_t> orbit_counts() const;
};

QuotientComplex build_quotient(int p, const PermGroup& group, int level = 1,
                               const ProgressFn& progress = {});

}  // namespace trophom
