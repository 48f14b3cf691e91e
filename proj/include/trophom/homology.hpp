#pragma once

#include <string>
#include <vector>

#include "trophom/quotient_complex.hpp"
#include "trophom/smith.hpp"

namespace trophom {

// A finitely generated abelian group: free rank plus invariant factors
// (each at least 2, each dividing the next).
struct HomologyGroup {
    std::size_t rank = 0;
    std::vector<Int> invariant_factors;

    bool is_zero() const { return rank == 0 && invariant_factors.empty(); }
    bool is_finite() const { return rank == 0; }

    // "0", "Z", "Z/4", "Z^2 + Z/2 + Z/4", ...
    std::string to_string() const;

    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

// Homology at C_k of ... -> C_{k+1} --d_k1--> C_k --d_k--> C_{k-1} -> ...
// Verifies d_k . d_k1 == 0. rank = nullity(d_k) - rank(d_k1); torsion is
// read from the Smith diagonal of d_k1.
HomologyGroup homology_at(const SparseIntMatrix& d_k, const SparseIntMatrix& d_k1,
                          const ProgressFn& progress = {});

struct QuotientHomology {
    std::vector<HomologyGroup> reduced;  // degrees 0..p-1
    std::vector<std::size_t> orbit_counts;
};

// Reduced integral homology of the quotient complex in all degrees.
// Verifies that consecutive boundaries compose to zero.
QuotientHomology quotient_homology(const QuotientComplex& complex,
                                   const ProgressFn& progress = {});

struct SphereQuotientOptions {
    int level = 1;
    bool use_shortcut = true;  // groups with a transposition give contractible quotients
    ProgressFn progress;
};

// Reduced homology of S^{p-1}/G, degrees 0..p-1.
std::vector<HomologyGroup> reduced_sphere_quotient_homology(
    int p, const PermGroup& group, const SphereQuotientOptions& options = {});

// Computes at subdivision levels 1 and 2 and throws ConsistencyError if they
// disagree. Feasible for small p only.
std::vector<HomologyGroup> level_checked_sphere_quotient_homology(
    int p, const PermGroup& group, const ProgressFn& progress = {});

}  // namespace trophom
