#pragma once

#include <map>
#include <string>
#include <vector>

#include "trophom/homology.hpp"
#include "trophom/json_io.hpp"
#include "trophom/stable_graph.hpp"

namespace trophom {

// A cell of the moduli space outside the bm subcomplex: a stable graph with
// p+1 edges together with the edge symmetries of its automorphisms.
struct CellSpec {
    StableGraph graph;
    int p = 0;  // cell dimension = #edges - 1
    PermGroup edge_symmetries;
};

// All cells not lying in the bm subcomplex, in enumeration order.
std::vector<CellSpec> relative_cells(int genus, int n);

// True iff every stable graph with at most two edges has a bridge, cut
// vertex, loop, repeated marking, positive weight or parallel pair, i.e.
// the 1-skeleton lies inside the bm subcomplex.
bool check_one_skeleton(int genus, int n);

struct E1Entry {
    int p = 0;
    int q = 0;
    // contributing cells with their reduced sphere-quotient homology
    std::vector<std::pair<std::string, HomologyGroup>> groups;
};

// First page of the spectral sequence of the skeletal filtration relative
// to the bm subcomplex: one entry per (p, q) with a nonzero contribution,
// plus the base entry Z at (0, 0).
struct E1Page {
    int genus = 0;
    int n = 0;
    int max_p = 0;  // dimension of the moduli complex, 3g-4+n
    std::vector<E1Entry> entries;  // sorted by (p, q), nonzero only
    bool base_entry = true;        // Z at (0, 0)
};

struct SpectralOptions {
    int level = 1;
    bool use_shortcut = true;
    int jobs = 1;
    std::size_t group_cap = kDefaultGroupCap;
    ProgressFn progress;
};

E1Page e1_page(int genus, int n, const SpectralOptions& options = {});
// Assembles the page from precomputed cells (shares the enumeration).
E1Page e1_page_from_cells(const std::vector<CellSpec>& cells, int genus, int n,
                          const SpectralOptions& options = {});

// What the order-counting argument certifies about one reduced degree.
struct DegreeCertificate {
    enum class Status { Zero, Exact, Torsion, Undetermined };
    Status status = Status::Undetermined;
    HomologyGroup exact_value;           // meaningful when status == Exact
    std::map<long, Int> torsion_bounds;  // prime -> certified lower bound on the l-part
    std::size_t rank_lower_bound = 0;
    std::vector<std::string> argument;   // the order inequalities used
};

struct TorsionReport {
    int max_degree = 0;
    std::map<int, DegreeCertificate> degrees;  // every degree 0..max_degree
};

// Order-counting inference over all differentials d_r: (p,q) -> (p-r,q+r-1),
// r >= 1. No differential is ever computed; only group orders are used.
// A degree is Zero when its whole antidiagonal vanishes, Exact when a single
// entry is untouched by any possible differential, Torsion when the division
// bound leaves a nontrivial l-part, and Undetermined otherwise.
TorsionReport infer(const E1Page& page);

struct DeltaReport {
    int genus = 0;
    int n = 0;
    std::vector<CellSpec> cells;
    E1Page page;
    TorsionReport certified;
};

DeltaReport delta_report(int genus, int n, const SpectralOptions& options = {});
nlohmann::json delta_report_to_json(const DeltaReport& report);

}  // namespace trophom
