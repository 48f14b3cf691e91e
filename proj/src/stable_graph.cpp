#include "trophom/stable_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <ranges>
#include <set>

#include "trophom/errors.hpp"

namespace trophom {

int StableGraph::valence(int v) const {
    int val = 0;
    for (const auto& [a, b] : edges) {
        if (a == v) ++val;
        if (b == v) ++val;
    }
    return val;
}

int StableGraph::marks_at(int v) const {
    return static_cast<int>(std::count(markings.begin(), markings.end(), v));
}

int StableGraph::total_weight() const {
    return std::accumulate(weights.begin(), weights.end(), 0);
}

bool StableGraph::is_connected() const {
    int n = num_vertices();
    if (n == 0) return false;
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& [a, b] : edges) parent[static_cast<std::size_t>(find(a))] = find(b);
    int root = find(0);
    for (int v = 1; v < n; ++v)
        if (find(v) != root) return false;
    return true;
}

void StableGraph::validate() const {
    int n_v = num_vertices();
    if (n_v < 1) throw InvalidInput("graph needs at least one vertex");
    for (int w : weights)
        if (w < 0) throw InvalidInput("negative vertex weight");
    for (const auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n_v || b >= n_v)
            throw InvalidInput("edge endpoint out of range");
        if (a > b) throw InvalidInput("edge endpoints not normalized");
    }
    for (int m : markings)
        if (m < 0 || m >= n_v) throw InvalidInput("marking out of range");
    if (!is_connected()) throw InvalidInput("graph is not connected");
    if (h1() < 0 || h1() + total_weight() != genus)
        throw InvalidInput("genus does not match first Betti number plus weights");
    for (int v = 0; v < n_v; ++v)
        if (weights[static_cast<std::size_t>(v)] == 0 && valence(v) + marks_at(v) < 3)
            throw InvalidInput("unstable vertex of weight zero");
    int max_e = 3 * genus - 3 + num_markings();
    if (num_edges() < 1 || num_edges() > max_e)
        throw InvalidInput("edge count outside [1, 3g-3+n]");
}

StableGraph graph_from_json(const nlohmann::json& j) {
    StableGraph g;
    g.genus = j.at("genus").get<int>();
    for (const auto& v : j.at("vertices")) g.weights.push_back(v.at("weight").get<int>());
    for (const auto& e : j.at("edges")) {
        int a = e.at(0).get<int>(), b = e.at(1).get<int>();
        if (a > b) std::swap(a, b);
        g.edges.emplace_back(a, b);
    }
    if (j.contains("markings"))
        for (const auto& m : j.at("markings")) g.markings.push_back(m.get<int>());
    if (j.contains("n") && j.at("n").get<int>() != g.num_markings())
        throw InvalidInput("marking count does not match n");
    g.validate();
    return g;
}

nlohmann::json graph_to_json(const StableGraph& g) {
    nlohmann::json j;
    j["genus"] = g.genus;
    j["n"] = g.num_markings();
    j["vertices"] = nlohmann::json::array();
    for (int w : g.weights) j["vertices"].push_back({{"weight", w}});
    j["edges"] = nlohmann::json::array();
    for (const auto& [a, b] : g.edges) j["edges"].push_back({a, b});
    j["markings"] = g.markings;
    return j;
}

StableGraph contract(const StableGraph& g, int edge_index) {
    if (edge_index < 0 || edge_index >= g.num_edges())
        throw InvalidInput("edge index out of range");
    if (g.num_edges() < 2) throw InvalidInput("cannot contract the last edge");

    auto [u, v] = g.edges[static_cast<std::size_t>(edge_index)];
    StableGraph out;
    out.genus = g.genus;
    if (u == v) {
        // loop: delete the edge, bump the weight
        out.weights = g.weights;
        out.weights[static_cast<std::size_t>(u)] += 1;
        out.markings = g.markings;
        for (int i = 0; i < g.num_edges(); ++i)
            if (i != edge_index) out.edges.push_back(g.edges[static_cast<std::size_t>(i)]);
    } else {
        // merge v into u, shift higher indices down
        auto remap = [u = u, v = v](int x) {
            if (x == v) x = u;
            return x > v ? x - 1 : x;
        };
        for (int i = 0; i < g.num_vertices(); ++i)
            if (i != v) out.weights.push_back(g.weights[static_cast<std::size_t>(i)]);
        out.weights[static_cast<std::size_t>(remap(u))] += g.weights[static_cast<std::size_t>(v)];
        for (int i = 0; i < g.num_edges(); ++i) {
            if (i == edge_index) continue;
            auto [a, b] = g.edges[static_cast<std::size_t>(i)];
            int ra = remap(a), rb = remap(b);
            if (ra > rb) std::swap(ra, rb);
            out.edges.emplace_back(ra, rb);
        }
        for (int m : g.markings) out.markings.push_back(remap(m));
    }
    out.validate();
    return out;
}

namespace {

// Bridges and articulation vertices of a connected multigraph. Loops are
// skipped; a parallel pair rules out both conditions at its endpoints.
struct CutSearch {
    std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbor, edge id)
    std::vector<int> disc, low;
    int timer = 0;
    bool found_bridge = false, found_cut = false;

    explicit CutSearch(const StableGraph& g) {
        adj.resize(static_cast<std::size_t>(g.num_vertices()));
        for (int i = 0; i < g.num_edges(); ++i) {
            auto [a, b] = g.edges[static_cast<std::size_t>(i)];
            if (a == b) continue;
            adj[static_cast<std::size_t>(a)].emplace_back(b, i);
            adj[static_cast<std::size_t>(b)].emplace_back(a, i);
        }
        disc.assign(static_cast<std::size_t>(g.num_vertices()), -1);
        low.assign(static_cast<std::size_t>(g.num_vertices()), -1);
        dfs(0, -1);
    }

    void dfs(int u, int entry_edge) {
        disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
        int children = 0;
        for (const auto& [w, id] : adj[static_cast<std::size_t>(u)]) {
            if (id == entry_edge) continue;
            if (disc[static_cast<std::size_t>(w)] == -1) {
                ++children;
                dfs(w, id);
                low[static_cast<std::size_t>(u)] =
                    std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(w)]);
                if (low[static_cast<std::size_t>(w)] > disc[static_cast<std::size_t>(u)])
                    found_bridge = true;
                if (entry_edge != -1 &&
                    low[static_cast<std::size_t>(w)] >= disc[static_cast<std::size_t>(u)])
                    found_cut = true;
            } else {
                low[static_cast<std::size_t>(u)] =
                    std::min(low[static_cast<std::size_t>(u)], disc[static_cast<std::size_t>(w)]);
            }
        }
        if (entry_edge == -1 && children > 1) found_cut = true;
    }
};

}  // namespace

bool in_bm(const StableGraph& g) {
    for (int w : g.weights)
        if (w > 0) return true;
    std::set<std::pair<int, int>> seen_edges;
    for (const auto& e : g.edges) {
        if (e.first == e.second) return true;      // loop
        if (!seen_edges.insert(e).second) return true;  // parallel edges
    }
    std::set<int> marked;
    for (int m : g.markings)
        if (!marked.insert(m).second) return true;  // repeated marking

    CutSearch cut(g);
    return cut.found_bridge || cut.found_cut;
}

namespace {

// Multiplicity matrix, per-vertex mark sets, and an isomorphism-invariant
// coloring refined by neighbor color multisets.
struct GraphShape {
    int n = 0;
    std::vector<std::vector<int>> mult;       // symmetric, diagonal = loop count
    std::vector<std::vector<int>> mark_sets;  // sorted mark indices per vertex
    std::vector<int> color;

    explicit GraphShape(const StableGraph& g) : n(g.num_vertices()) {
        mult.assign(static_cast<std::size_t>(n),
                    std::vector<int>(static_cast<std::size_t>(n), 0));
        for (const auto& [a, b] : g.edges) {
            if (a == b)
                ++mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)];
            else {
                ++mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                ++mult[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
            }
        }
        mark_sets.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < g.num_markings(); ++i)
            mark_sets[static_cast<std::size_t>(g.markings[static_cast<std::size_t>(i)])]
                .push_back(i);

        std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            auto& s = sig[static_cast<std::size_t>(v)];
            s.push_back(g.weights[static_cast<std::size_t>(v)]);
            s.push_back(mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)]);
            s.push_back(g.valence(v));
            s.insert(s.end(), mark_sets[static_cast<std::size_t>(v)].begin(),
                     mark_sets[static_cast<std::size_t>(v)].end());
        }
        color = rank_signatures(sig);

        while (true) {
            std::vector<std::vector<int>> next(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) {
                auto& s = next[static_cast<std::size_t>(v)];
                s.push_back(color[static_cast<std::size_t>(v)]);
                std::vector<std::pair<int, int>> nb;
                for (int u = 0; u < n; ++u)
                    if (u != v &&
                        mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] > 0)
                        nb.emplace_back(
                            color[static_cast<std::size_t>(u)],
                            mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]);
                std::sort(nb.begin(), nb.end());
                for (const auto& [c, m] : nb) {
                    s.push_back(c);
                    s.push_back(m);
                }
            }
            std::vector<int> refined = rank_signatures(next);
            if (refined == color) break;
            color = refined;
        }
    }

    static std::vector<int> rank_signatures(const std::vector<std::vector<int>>& sig) {
        std::vector<std::vector<int>> sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> out(sig.size());
        for (std::size_t v = 0; v < sig.size(); ++v)
            out[v] = static_cast<int>(
                std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
        return out;
    }
};

// Branch-and-bound search for the minimal color-respecting relabeling.
// New labels go out in color order (every isomorphism respects colors), and
// the objective compares lower-triangular adjacency rows position by
// position, so subtrees that can no longer beat the incumbent are cut as
// soon as one row exceeds it.
struct CanonicalSearch {
    const GraphShape& shape;
    const StableGraph& g;
    int n;
    std::vector<int> slot_color;                  // color demanded at each position
    std::vector<int> inv;                         // position -> old vertex
    std::vector<int> label;                       // old vertex -> position
    std::vector<bool> used;
    std::vector<std::vector<int>> rows;           // current lower-tri rows
    std::vector<std::vector<int>> best_rows;
    std::vector<int> best_marks;
    std::vector<int> best_label;
    bool have_best = false;
    unsigned long generation = 0;

    CanonicalSearch(const GraphShape& s, const StableGraph& graph)
        : shape(s), g(graph), n(s.n) {
        slot_color = shape.color;
        std::sort(slot_color.begin(), slot_color.end());
        inv.assign(static_cast<std::size_t>(n), -1);
        label.assign(static_cast<std::size_t>(n), -1);
        used.assign(static_cast<std::size_t>(n), false);
        rows.resize(static_cast<std::size_t>(n));
        descend(0, false);
    }

    std::vector<int> row_for(int v, int t) const {
        std::vector<int> row;
        row.reserve(static_cast<std::size_t>(t) + 1);
        row.push_back(shape.mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)]);
        for (int p = 0; p < t; ++p)
            row.push_back(shape.mult[static_cast<std::size_t>(v)]
                                    [static_cast<std::size_t>(inv[static_cast<std::size_t>(p)])]);
        return row;
    }

    std::vector<int> marks_vector() const {
        std::vector<int> out;
        out.reserve(g.markings.size());
        for (int m : g.markings) out.push_back(label[static_cast<std::size_t>(m)]);
        return out;
    }

    void adopt_current() {
        best_rows = rows;
        best_marks = marks_vector();
        best_label = label;
        have_best = true;
        ++generation;
    }

    // strictly_less: the rows placed so far are lexicographically below the
    // incumbent's prefix.
    void descend(int t, bool strictly_less) {
        if (t == n) {
            if (!have_best || strictly_less)
                adopt_current();
            else if (std::vector<int> marks = marks_vector(); marks < best_marks)
                adopt_current();
            return;
        }
        int want = slot_color[static_cast<std::size_t>(t)];
        std::vector<std::pair<std::vector<int>, int>> cands;
        for (int v = 0; v < n; ++v)
            if (!used[static_cast<std::size_t>(v)] &&
                shape.color[static_cast<std::size_t>(v)] == want)
                cands.emplace_back(row_for(v, t), v);
        std::sort(cands.begin(), cands.end());

        bool lt = strictly_less;
        for (auto& [row, v] : cands) {
            bool child_lt = lt;
            if (have_best && !lt) {
                if (row > best_rows[static_cast<std::size_t>(t)]) break;  // sorted: all worse
                child_lt = row < best_rows[static_cast<std::size_t>(t)];
            }
            used[static_cast<std::size_t>(v)] = true;
            inv[static_cast<std::size_t>(t)] = v;
            label[static_cast<std::size_t>(v)] = t;
            rows[static_cast<std::size_t>(t)] = row;
            unsigned long before = generation;
            descend(t + 1, child_lt);
            used[static_cast<std::size_t>(v)] = false;
            label[static_cast<std::size_t>(v)] = -1;
            if (generation != before) lt = false;  // incumbent now extends this prefix
        }
    }
};

}  // namespace

std::vector<int> canonical_key(const StableGraph& g) {
    GraphShape shape(g);
    CanonicalSearch search(shape, g);
    std::vector<int> key;
    key.push_back(g.genus);
    key.push_back(shape.n);
    key.push_back(g.num_edges());
    key.push_back(g.num_markings());
    // weights by position (color-determined, read off the winning labeling)
    std::vector<int> inv(static_cast<std::size_t>(shape.n));
    for (int v = 0; v < shape.n; ++v)
        inv[static_cast<std::size_t>(search.best_label[static_cast<std::size_t>(v)])] = v;
    for (int t = 0; t < shape.n; ++t)
        key.push_back(g.weights[static_cast<std::size_t>(inv[static_cast<std::size_t>(t)])]);
    for (const std::vector<int>& row : search.best_rows)
        key.insert(key.end(), row.begin(), row.end());
    key.insert(key.end(), search.best_marks.begin(), search.best_marks.end());
    return key;
}

StableGraph canonical_form(const StableGraph& g) {
    GraphShape shape(g);
    CanonicalSearch search(shape, g);
    const std::vector<int>& best_label = search.best_label;

    StableGraph out;
    out.genus = g.genus;
    out.weights.resize(g.weights.size());
    for (int v = 0; v < g.num_vertices(); ++v)
        out.weights[static_cast<std::size_t>(best_label[static_cast<std::size_t>(v)])] =
            g.weights[static_cast<std::size_t>(v)];
    for (const auto& [a, b] : g.edges) {
        int ra = best_label[static_cast<std::size_t>(a)];
        int rb = best_label[static_cast<std::size_t>(b)];
        if (ra > rb) std::swap(ra, rb);
        out.edges.emplace_back(ra, rb);
    }
    std::sort(out.edges.begin(), out.edges.end());
    for (int m : g.markings) out.markings.push_back(best_label[static_cast<std::size_t>(m)]);
    return out;
}

bool isomorphic(const StableGraph& a, const StableGraph& b) {
    return canonical_key(a) == canonical_key(b);
}

std::vector<std::vector<int>> vertex_automorphisms(const StableGraph& g) {
    GraphShape shape(g);
    int n = shape.n;
    std::vector<std::vector<int>> out;
    std::vector<int> alpha(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    // Assign images vertex by vertex within color classes, checking
    // adjacency against everything already placed.
    std::function<void(int)> rec = [&](int v) {
        if (v == n) {
            out.push_back(alpha);
            return;
        }
        for (int w = 0; w < n; ++w) {
            if (used[static_cast<std::size_t>(w)] ||
                shape.color[static_cast<std::size_t>(w)] != shape.color[static_cast<std::size_t>(v)])
                continue;
            if (shape.mark_sets[static_cast<std::size_t>(w)] !=
                shape.mark_sets[static_cast<std::size_t>(v)])
                continue;
            bool ok = shape.mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] ==
                      shape.mult[static_cast<std::size_t>(w)][static_cast<std::size_t>(w)];
            for (int u = 0; u < v && ok; ++u)
                if (shape.mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] !=
                    shape.mult[static_cast<std::size_t>(w)]
                              [static_cast<std::size_t>(alpha[static_cast<std::size_t>(u)])])
                    ok = false;
            if (!ok) continue;
            used[static_cast<std::size_t>(w)] = true;
            alpha[static_cast<std::size_t>(v)] = w;
            rec(v + 1);
            used[static_cast<std::size_t>(w)] = false;
        }
    };
    rec(0);
    return out;
}

PermGroup edge_group(const StableGraph& g, std::size_t cap) {
    int n_e = g.num_edges();
    std::map<std::pair<int, int>, std::vector<int>> bundles;
    for (int i = 0; i < n_e; ++i) bundles[g.edges[static_cast<std::size_t>(i)]].push_back(i);

    std::vector<Permutation> gens;
    for (const auto& [ends, bundle] : bundles) {
        (void)ends;
        for (std::size_t i = 0; i + 1 < bundle.size(); ++i) {
            std::vector<std::uint8_t> img(static_cast<std::size_t>(n_e));
            std::iota(img.begin(), img.end(), 0);
            std::swap(img[static_cast<std::size_t>(bundle[i])],
                      img[static_cast<std::size_t>(bundle[i + 1])]);
            gens.emplace_back(std::move(img));
        }
    }
    for (const std::vector<int>& alpha : vertex_automorphisms(g)) {
        std::vector<std::uint8_t> img(static_cast<std::size_t>(n_e));
        std::map<std::pair<int, int>, std::size_t> cursor;
        for (int i = 0; i < n_e; ++i) {
            auto [a, b] = g.edges[static_cast<std::size_t>(i)];
            int ra = alpha[static_cast<std::size_t>(a)];
            int rb = alpha[static_cast<std::size_t>(b)];
            if (ra > rb) std::swap(ra, rb);
            const std::vector<int>& target = bundles.at({ra, rb});
            img[static_cast<std::size_t>(i)] =
                static_cast<std::uint8_t>(target[cursor[{ra, rb}]++]);
        }
        gens.emplace_back(std::move(img));
    }
    return PermGroup::closure(n_e, gens, cap);
}

namespace {

// Recursive multiplicity assignment over vertex pairs with degree-bound
// pruning. Emits labeled candidates; connectivity and isomorphism dedup are
// the caller's business.
struct PairEnumerator {
    int n_vertices = 0;
    int n_edges = 0;
    std::vector<int> min_val;
    std::vector<int> max_val;
    // tied_down[v]: vertex v has the same (weight, marks) key as v-1, so only
    // labelings with val[v-1] >= val[v] are kept. Every isomorphism class
    // has such a labeling, and this cuts the duplicate factor hard.
    std::vector<bool> tied_down;
    std::function<void(const std::vector<int>&)> emit;

    std::vector<std::pair<int, int>> pairs;
    std::vector<int> mult;
    std::vector<int> val;

    void run() {
        pairs.clear();
        for (int i = 0; i < n_vertices; ++i)
            for (int j = i; j < n_vertices; ++j) pairs.emplace_back(i, j);
        mult.assign(pairs.size(), 0);
        val.assign(static_cast<std::size_t>(n_vertices), 0);
        rec(0, n_edges);
    }

    bool closed_vertex_ok(int v) const {
        if (val[static_cast<std::size_t>(v)] < min_val[static_cast<std::size_t>(v)]) return false;
        if (v > 0 && tied_down[static_cast<std::size_t>(v)] &&
            val[static_cast<std::size_t>(v - 1)] < val[static_cast<std::size_t>(v)])
            return false;
        return true;
    }

    void rec(std::size_t idx, int remaining) {
        if (idx == pairs.size()) {
            if (remaining == 0 && closed_vertex_ok(n_vertices - 1)) emit(mult);
            return;
        }
        auto [i, j] = pairs[idx];
        // vertex i-1 closed once its row is done
        if (j == i && i > 0 && !closed_vertex_ok(i - 1)) return;

        int deficiency = 0, slack = 0;
        for (int v = i; v < n_vertices; ++v) {
            deficiency += std::max(
                0, min_val[static_cast<std::size_t>(v)] - val[static_cast<std::size_t>(v)]);
            slack += max_val[static_cast<std::size_t>(v)] - val[static_cast<std::size_t>(v)];
        }
        if (deficiency > 2 * remaining || slack < 2 * remaining) return;

        int step = (i == j) ? 2 : 1;
        int room_i = max_val[static_cast<std::size_t>(i)] - val[static_cast<std::size_t>(i)];
        int cap;
        if (i == j) {
            cap = room_i / 2;
        } else {
            int room_j = max_val[static_cast<std::size_t>(j)] - val[static_cast<std::size_t>(j)];
            cap = std::min(room_i, room_j);
        }
        cap = std::min(cap, remaining);
        for (int m = 0; m <= cap; ++m) {
            if (m > 0) {
                mult[idx] = m;
                val[static_cast<std::size_t>(i)] += step;
                if (i != j) val[static_cast<std::size_t>(j)] += 1;
            }
            rec(idx + 1, remaining - m);
        }
        val[static_cast<std::size_t>(i)] -= step * mult[idx];
        if (i != j) val[static_cast<std::size_t>(j)] -= mult[idx];
        mult[idx] = 0;
    }
};

// Non-increasing weight vectors only; other orderings are relabelings.
void enumerate_weight_vectors(int n_vertices, int total, std::vector<int>& cur,
                              const std::function<void()>& emit) {
    if (static_cast<int>(cur.size()) == n_vertices) {
        if (total == 0) emit();
        return;
    }
    int cap = cur.empty() ? total : std::min(total, cur.back());
    for (int w = cap; w >= 0; --w) {
        cur.push_back(w);
        enumerate_weight_vectors(n_vertices, total - w, cur, emit);
        cur.pop_back();
    }
}

}  // namespace

std::vector<StableGraph> enumerate_stable_graphs(int genus, int n) {
    return enumerate_stable_graphs(genus, n, 3 * genus - 3 + n);
}

std::vector<StableGraph> enumerate_stable_graphs(int genus, int n, int max_edges) {
    if (genus < 0 || n < 0 || 2 * genus - 2 + n <= 0 || 3 * genus - 3 + n <= 0)
        throw InvalidInput("unstable (g, n): need 2g-2+n > 0 and 3g-3+n > 0");
    max_edges = std::min(max_edges, 3 * genus - 3 + n);

    std::set<std::vector<int>> seen;
    std::vector<StableGraph> out;

    int max_vertices = 2 * genus - 2 + n;
    for (int n_v = 1; n_v <= max_vertices; ++n_v) {
        for (int total_w = 0; total_w <= genus; ++total_w) {
            int n_e = genus - total_w + n_v - 1;
            if (n_e < 1 || n_e > max_edges || n_e < n_v - 1) continue;

            std::vector<int> wvec;
            enumerate_weight_vectors(n_v, total_w, wvec, [&] {
                std::vector<int> marking(static_cast<std::size_t>(n), 0);
                std::function<void(int)> mark_rec = [&](int mi) {
                    if (mi < n) {
                        for (int v = 0; v < n_v; ++v) {
                            marking[static_cast<std::size_t>(mi)] = v;
                            mark_rec(mi + 1);
                        }
                        return;
                    }
                    // keep one labeling per (weight, marks) pattern: the mark
                    // bitmask must be non-increasing inside equal-weight runs
                    std::vector<int> markbits(static_cast<std::size_t>(n_v), 0);
                    for (int i = 0; i < n; ++i)
                        markbits[static_cast<std::size_t>(marking[static_cast<std::size_t>(i)])] |=
                            1 << i;
                    for (int v = 1; v < n_v; ++v)
                        if (wvec[static_cast<std::size_t>(v)] == wvec[static_cast<std::size_t>(v - 1)] &&
                            markbits[static_cast<std::size_t>(v)] >
                                markbits[static_cast<std::size_t>(v - 1)])
                            return;

                    PairEnumerator pe;
                    pe.n_vertices = n_v;
                    pe.n_edges = n_e;
                    pe.min_val.assign(static_cast<std::size_t>(n_v), 0);
                    pe.max_val.assign(static_cast<std::size_t>(n_v), 0);
                    pe.tied_down.assign(static_cast<std::size_t>(n_v), false);
                    for (int v = 1; v < n_v; ++v)
                        pe.tied_down[static_cast<std::size_t>(v)] =
                            wvec[static_cast<std::size_t>(v)] == wvec[static_cast<std::size_t>(v - 1)] &&
                            markbits[static_cast<std::size_t>(v)] ==
                                markbits[static_cast<std::size_t>(v - 1)];
                    for (int v = 0; v < n_v; ++v) {
                        int marks =
                            static_cast<int>(std::count(marking.begin(), marking.end(), v));
                        int need =
                            wvec[static_cast<std::size_t>(v)] == 0 ? std::max(0, 3 - marks) : 0;
                        if (n_v > 1) need = std::max(need, 1);
                        pe.min_val[static_cast<std::size_t>(v)] = need;
                    }
                    int min_sum = std::accumulate(pe.min_val.begin(), pe.min_val.end(), 0);
                    for (int v = 0; v < n_v; ++v) {
                        int cap = 2 * n_e - (min_sum - pe.min_val[static_cast<std::size_t>(v)]);
                        if (cap < pe.min_val[static_cast<std::size_t>(v)]) return;
                        pe.max_val[static_cast<std::size_t>(v)] = cap;
                    }

                    pe.emit = [&](const std::vector<int>& mult) {
                        StableGraph g;
                        g.genus = genus;
                        g.weights = wvec;
                        g.markings = marking;
                        std::size_t idx = 0;
                        for (int i = 0; i < n_v; ++i)
                            for (int j = i; j < n_v; ++j, ++idx)
                                for (int m = 0; m < mult[idx]; ++m) g.edges.emplace_back(i, j);
                        if (!g.is_connected()) return;
                        std::vector<int> key = canonical_key(g);
                        if (seen.insert(std::move(key)).second)
                            out.push_back(canonical_form(g));
                    };
                    pe.run();
                };
                mark_rec(0);
            });
        }
    }

    for (const StableGraph& g : out) g.validate();
    std::vector<std::pair<std::tuple<int, int, std::vector<int>>, std::size_t>> order;
    order.reserve(out.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        order.emplace_back(
            std::make_tuple(out[i].num_edges(), out[i].num_vertices(), canonical_key(out[i])), i);
    std::sort(order.begin(), order.end());
    std::vector<StableGraph> sorted;
    sorted.reserve(out.size());
    for (const auto& [key, i] : order) sorted.push_back(std::move(out[i]));
    return sorted;
}

}  // namespace trophom
