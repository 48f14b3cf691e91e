#pragma once

#include <string>
#include <vector>

#include "trophom/homology.hpp"
#include "trophom/stable_graph.hpp"

namespace trophom {

// Graphs that recur as known-answer inputs.
namespace fixtures {
StableGraph theta();
StableGraph dumbbell();
StableGraph k4();
StableGraph square_pyramid();
StableGraph triangular_prism();
StableGraph k33();
}  // namespace fixtures

// Smith-form oracle independent of the elimination code: d_k is the gcd of
// all k x k minors divided by the gcd of all (k-1) x (k-1) minors.
// Exponential in the matrix size; intended for matrices up to ~7x7.
std::vector<Int> minor_gcd_diagonal(const SparseIntMatrix& m);

struct SelftestOptions {
    bool quick = false;        // skip the p >= 7 quotients
    bool level_check = false;  // also run subdivision level 1 vs 2 agreement
    int jobs = 1;
    ProgressFn progress;
};

struct SelftestCase {
    std::string name;
    bool skipped = false;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct SelftestSummary {
    std::vector<SelftestCase> cases;
    bool all_passed() const {
        for (const SelftestCase& c : cases)
            if (!c.skipped && !c.passed) return false;
        return true;
    }
};

// Known-answer cases and property suites runnable from the command line.
SelftestSummary run_selftest(const SelftestOptions& options = {});

}  // namespace trophom
