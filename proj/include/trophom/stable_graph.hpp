#pragma once

#include <json.hpp>

#include <utility>
#include <vector>

#include "trophom/permgroup.hpp"

namespace trophom {

// A stable weighted marked multigraph: the combinatorial type of a tropical
// curve. Vertices carry non-negative weights, edges are unordered pairs
// (a loop repeats its endpoint), markings place the labels 1..n on vertices.
// Edge order fixes the edge indexing used by edge_group.
struct StableGraph {
    int genus = 0;
    std::vector<int> weights;
    std::vector<std::pair<int, int>> edges;  // stored with first <= second
    std::vector<int> markings;               // markings[i] = vertex of mark i+1

    int num_vertices() const { return static_cast<int>(weights.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int num_markings() const { return static_cast<int>(markings.size()); }

    int valence(int v) const;  // loops count twice
    int marks_at(int v) const;
    int h1() const { return num_edges() - num_vertices() + 1; }
    int total_weight() const;

    bool is_connected() const;

    // Throws InvalidInput unless connected, genus-consistent, stable and
    // within the edge bound 1 <= #edges <= 3g-3+n.
    void validate() const;

    friend bool operator==(const StableGraph&, const StableGraph&) = default;
};

StableGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const StableGraph& g);

// Contracts edge `edge_index`: endpoints merge and weights add for a
// non-loop; a loop is deleted and its vertex weight bumped. Throws when
// fewer than two edges remain.
StableGraph contract(const StableGraph& g, int edge_index);

// True iff the graph has a bridge, cut vertex, loop, repeated marking,
// vertex of positive weight, or parallel edges.
bool in_bm(const StableGraph& g);

// Total-order key identifying the isomorphism class (same key iff
// isomorphic; isomorphisms preserve weights, adjacency multiplicities and
// each marking pointwise).
std::vector<int> canonical_key(const StableGraph& g);
StableGraph canonical_form(const StableGraph& g);
bool isomorphic(const StableGraph& a, const StableGraph& b);

// All weight/marking/adjacency preserving vertex bijections.
std::vector<std::vector<int>> vertex_automorphisms(const StableGraph& g);

// Image of the automorphism group in the symmetric group on the edge set.
// Parallel edges and loops contribute their internal permutations; the
// half-edge swap of a single loop acts trivially.
PermGroup edge_group(const StableGraph& g, std::size_t cap = kDefaultGroupCap);

// One representative per isomorphism class of stable graphs of the given
// genus with n markings and at least one edge, sorted by
// (#edges, #vertices, canonical key). Throws InvalidInput unless
// 2g-2+n > 0 and 3g-3+n > 0.
std::vector<StableGraph> enumerate_stable_graphs(int genus, int n);

// Same, restricted to graphs with at most max_edges edges.
std::vector<StableGraph> enumerate_stable_graphs(int genus, int n, int max_edges);

}  // namespace trophom
