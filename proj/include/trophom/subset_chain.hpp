#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trophom/permgroup.hpp"

namespace trophom {

// A subset of {0..m-1} as a bitmask. m <= 31.
using Subset = std::uint32_t;

Subset act_subset(const Permutation& g, Subset s);

// Lexicographic order on the sorted index lists of two subsets.
bool subset_less(Subset a, Subset b);

// A strictly increasing chain of nonempty proper subsets of {0..m-1}:
// a simplex of the barycentric subdivision of the boundary of the
// (m-1)-simplex. A chain of length k+1 is a k-simplex.
struct SubsetChain {
    std::vector<Subset> sets;

    std::size_t length() const { return sets.size(); }

    friend bool operator==(const SubsetChain&, const SubsetChain&) = default;

    std::string to_string() const;
};

// Total order: length first, then memberwise subset_less.
bool chain_less(const SubsetChain& a, const SubsetChain& b);

bool is_valid_chain(const SubsetChain& c, int degree);

// Applies g to every member set. Cardinalities and inclusions are preserved.
SubsetChain act_chain(const Permutation& g, const SubsetChain& c);

// The minimum of the G-orbit of c under chain_less. Idempotent and
// constant on orbits.
SubsetChain canonical_rep(const PermGroup& group, const SubsetChain& c);

}  // namespace trophom
