// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavy sphere quotients run in parallel where possible.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "trophom/errors.hpp"
#include "trophom/parallel.hpp"
#include "trophom/selftest.hpp"
#include "trophom/spectral.hpp"

using namespace trophom;

namespace {

int jobs() {
    if (const char* env = std::getenv("TROPHOM_JOBS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 4u));
}

HomologyGroup z() { return HomologyGroup{1, {}}; }
HomologyGroup zmod(long d) { return HomologyGroup{0, {Int(d)}}; }

std::string compare_homology(const std::vector<HomologyGroup>& got,
                             const std::map<int, HomologyGroup>& expected_nonzero) {
    std::ostringstream err;
    for (std::size_t k = 0; k < got.size(); ++k) {
        auto it = expected_nonzero.find(static_cast<int>(k));
        HomologyGroup want = it == expected_nonzero.end() ? HomologyGroup{} : it->second;
        if (!(got[k] == want))
            err << "degree " << k << ": got " << got[k].to_string() << ", expected "
                << want.to_string() << "; ";
    }
    return err.str();
}

Permutation random_permutation(int degree, std::mt19937& rng) {
    std::vector<std::uint8_t> img(static_cast<std::size_t>(degree));
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation(std::move(img));
}

// Independent automorphism oracle: walk all V! bijections and all bundle
// matchings, collect distinct edge permutations.
std::size_t brute_force_edge_group_order(const StableGraph& g) {
    int n = g.num_vertices();
    std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
    for (auto [a, b] : g.edges) {
        ++mult[a][b];
        if (a != b) ++mult[b][a];
    }
    std::map<std::pair<int, int>, std::vector<int>> bundles;
    for (int i = 0; i < g.num_edges(); ++i) bundles[g.edges[i]].push_back(i);

    std::set<std::vector<int>> images;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int v = 0; v < n && ok; ++v)
            if (g.weights[v] != g.weights[perm[v]]) ok = false;
        for (int i = 0; i < g.num_markings() && ok; ++i)
            if (perm[g.markings[i]] != g.markings[i]) ok = false;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u; v < n && ok; ++v)
                if (mult[u][v] != mult[perm[u]][perm[v]]) ok = false;
        if (!ok) continue;

        std::vector<const std::vector<int>*> sources;
        std::vector<std::vector<int>> shuffles;
        for (auto& [e, list] : bundles) {
            sources.push_back(&list);
            std::vector<int> idx(list.size());
            std::iota(idx.begin(), idx.end(), 0);
            shuffles.push_back(idx);
        }
        std::function<void(std::size_t)> expand = [&](std::size_t b) {
            if (b == sources.size()) {
                std::vector<int> image(g.num_edges());
                for (std::size_t sb = 0; sb < sources.size(); ++sb) {
                    const std::vector<int>& src = *sources[sb];
                    auto [a0, b0] = g.edges[src[0]];
                    int ra = perm[a0], rb = perm[b0];
                    if (ra > rb) std::swap(ra, rb);
                    const std::vector<int>& dst = bundles.at({ra, rb});
                    for (std::size_t r = 0; r < src.size(); ++r)
                        image[src[r]] = dst[shuffles[sb][r]];
                }
                images.insert(image);
                return;
            }
            std::sort(shuffles[b].begin(), shuffles[b].end());
            do {
                expand(b + 1);
            } while (std::next_permutation(shuffles[b].begin(), shuffles[b].end()));
        };
        expand(0);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return images.size();
}

const std::vector<std::pair<int, int>>& gn_range() {
    static const std::vector<std::pair<int, int>> range = {
        {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}, {3, 0},
        {3, 1}, {3, 2}, {4, 0}, {4, 1}, {4, 2}};
    return range;
}

// ---- criteria ----

std::string criterion_sphere_quotient_table() {
    struct Case {
        StableGraph graph;
        std::map<int, HomologyGroup> expect;
        const char* name;
    };
    std::vector<Case> cases = {
        {fixtures::square_pyramid(), {{4, zmod(4)}, {5, zmod(2)}}, "pyramid"},
        {fixtures::triangular_prism(), {{5, zmod(2)}, {6, zmod(2)}}, "prism"},
        {fixtures::k33(), {{4, zmod(3)}, {5, zmod(4)}, {6, zmod(2)}}, "K33"},
    };
    std::vector<std::string> errors(cases.size());
    parallel_for(cases.size(), jobs(), [&](std::size_t i) {
        PermGroup group = edge_group(cases[i].graph);
        int p = cases[i].graph.num_edges() - 1;
        std::vector<HomologyGroup> h = reduced_sphere_quotient_homology(p, group, {});
        std::string diff = compare_homology(h, cases[i].expect);
        if (!diff.empty()) errors[i] = std::string(cases[i].name) + ": " + diff;
    });
    std::string all;
    for (const std::string& e : errors) all += e;
    return all;
}

std::string criterion_delta3() {
    DeltaReport report = delta_report(3, 0, {.jobs = jobs()});
    std::ostringstream err;
    if (report.cells.size() != 1 || !isomorphic(report.cells[0].graph, fixtures::k4()))
        err << "relative cell list is not {K4}; ";
    PermGroup group = edge_group(fixtures::k4());
    std::string sphere =
        compare_homology(reduced_sphere_quotient_homology(5, group, {}), {{4, z()}});
    if (!sphere.empty()) err << "S^4/S_4 is not a homology sphere: " << sphere;
    for (const auto& [degree, cert] : report.certified.degrees) {
        if (degree == 5) {
            if (cert.status != DegreeCertificate::Status::Exact ||
                !(cert.exact_value == z()))
                err << "H~5 not certified Z; ";
        } else if (cert.status != DegreeCertificate::Status::Zero) {
            err << "H~" << degree << " not certified zero; ";
        }
    }
    return err.str();
}

std::string criterion_delta4() {
    DeltaReport report = delta_report(4, 0, {.jobs = jobs()});
    std::ostringstream err;

    // E1 entries exactly as in the table
    std::map<std::pair<int, int>, std::vector<HomologyGroup>> expect = {
        {{7, -2}, {zmod(4)}},
        {{7, -1}, {zmod(2)}},
        {{8, -3}, {zmod(3)}},
        {{8, -2}, {zmod(4), zmod(2)}},
        {{8, -1}, {zmod(2), zmod(2)}},
    };
    std::map<std::pair<int, int>, std::vector<HomologyGroup>> got;
    for (const E1Entry& entry : report.page.entries) {
        for (const auto& [cell, group] : entry.groups)
            got[{entry.p, entry.q}].push_back(group);
    }
    auto order_key = [](const HomologyGroup& g) { return g.to_string(); };
    for (auto& [pq, groups] : got)
        std::sort(groups.begin(), groups.end(),
                  [&](const HomologyGroup& a, const HomologyGroup& b) {
                      return order_key(a) < order_key(b);
                  });
    for (auto& [pq, groups] : expect)
        std::sort(groups.begin(), groups.end(),
                  [&](const HomologyGroup& a, const HomologyGroup& b) {
                      return order_key(a) < order_key(b);
                  });
    if (got != expect) err << "E1 page differs from the published table; ";

    for (const auto& [degree, cert] : report.certified.degrees) {
        if (degree == 5 || degree == 6 || degree == 7) {
            long prime = degree == 5 ? 3 : 2;
            if (cert.status != DegreeCertificate::Status::Torsion ||
                !cert.torsion_bounds.count(prime))
                err << "H~" << degree << " missing certified " << prime << "-torsion; ";
        } else if (cert.status != DegreeCertificate::Status::Zero) {
            err << "H~" << degree << " not certified zero; ";
        }
    }
    return err.str();
}

std::string criterion_delta2() {
    DeltaReport report = delta_report(2, 0, {});
    std::ostringstream err;
    if (!report.cells.empty()) err << "relative cell list not empty; ";
    for (const auto& [degree, cert] : report.certified.degrees)
        if (cert.status != DegreeCertificate::Status::Zero)
            err << "H~" << degree << " not certified zero; ";
    return err.str();
}

std::string criterion_examples_regression() {
    std::ostringstream err;
    PermGroup c4 = PermGroup::closure(4, {Permutation::parse("(0 1 2 3)", 4)});
    QuotientComplex rp2 = build_quotient(3, c4);
    // unreduced homology through the two-matrix route
    HomologyGroup h0 = homology_at(rp2.boundaries[0], rp2.boundaries[1]);
    HomologyGroup h1 = homology_at(rp2.boundaries[1], rp2.boundaries[2]);
    HomologyGroup h2 = homology_at(rp2.boundaries[2], SparseIntMatrix(rp2.count(2), 0));
    if (!(h0 == z())) err << "H_0(RP^2 complex) != Z; ";
    if (!(h1 == zmod(2))) err << "H_1(RP^2 complex) != Z/2; ";
    if (!h2.is_zero()) err << "H_2(RP^2 complex) != 0; ";

    PermGroup c4_fixed = PermGroup::closure(5, {Permutation::parse("(0 1 2 3)", 5)});
    std::vector<HomologyGroup> susp = reduced_sphere_quotient_homology(4, c4_fixed, {});
    std::string diff = compare_homology(susp, {{2, zmod(2)}});
    if (!diff.empty()) err << "suspension: " << diff;
    // degree shift against the reduced homology of the unsuspended quotient
    std::vector<HomologyGroup> base = reduced_sphere_quotient_homology(3, c4, {});
    for (std::size_t k = 1; k < susp.size(); ++k)
        if (!(susp[k] == base[k - 1]))
            err << "suspension shift fails at degree " << k << "; ";
    return err.str();
}

std::string criterion_property_suite() {
    std::ostringstream err;

    // (a) + (b): boundaries square to zero and Euler characteristics agree
    {
        std::mt19937 rng(811);
        for (int trial = 0; trial < 25; ++trial) {
            int p = 2 + static_cast<int>(rng() % 4);
            std::vector<Permutation> gens;
            for (unsigned k = rng() % 3; k > 0; --k) gens.push_back(random_permutation(p + 1, rng));
            QuotientComplex c = build_quotient(p, PermGroup::closure(p + 1, gens));
            for (std::size_t k = 1; k + 1 < c.boundaries.size(); ++k)
                if (!c.boundaries[k].multiplied_by(c.boundaries[k + 1]).is_zero())
                    err << "(a) dd != 0; ";
            QuotientHomology h = quotient_homology(c);
            long chi_counts = 0, chi_ranks = 1;
            for (std::size_t k = 0; k < h.orbit_counts.size(); ++k) {
                long sign = k % 2 == 0 ? 1 : -1;
                chi_counts += sign * static_cast<long>(h.orbit_counts[k]);
                chi_ranks += sign * static_cast<long>(h.reduced[k].rank);
            }
            if (chi_counts != chi_ranks) err << "(b) euler mismatch; ";
        }
    }

    // (c) 100 random subgroups containing a transposition: contractible
    {
        std::vector<std::string> errors(100);
        parallel_for(100, jobs(), [&](std::size_t i) {
            std::mt19937 rng(static_cast<unsigned>(7100 + i));
            int p = 2 + static_cast<int>(rng() % 5);  // p <= 6
            std::vector<Permutation> gens{random_permutation(p + 1, rng)};
            std::vector<std::uint8_t> swap_img(static_cast<std::size_t>(p + 1));
            std::iota(swap_img.begin(), swap_img.end(), 0);
            int a = static_cast<int>(rng() % (p + 1));
            int b = (a + 1 + static_cast<int>(rng() % p)) % (p + 1);
            std::swap(swap_img[static_cast<std::size_t>(a)],
                      swap_img[static_cast<std::size_t>(b)]);
            gens.emplace_back(std::move(swap_img));
            PermGroup g = PermGroup::closure(p + 1, gens);
            if (!g.contains_transposition()) {
                errors[i] = "sample group lost its transposition";
                return;
            }
            for (const HomologyGroup& h :
                 reduced_sphere_quotient_homology(p, g, {.use_shortcut = false}))
                if (!h.is_zero()) errors[i] = "(c) nonzero homology for a reflection group";
        });
        for (const std::string& e : errors)
            if (!e.empty()) {
                err << e << "; ";
                break;
            }
    }

    // (d) subdivision level agreement on every test case with p <= 5
    {
        std::vector<std::pair<int, PermGroup>> cases;
        cases.emplace_back(2, PermGroup::trivial(3));
        cases.emplace_back(3, PermGroup::trivial(4));
        cases.emplace_back(4, PermGroup::trivial(5));
        cases.emplace_back(5, PermGroup::trivial(6));
        for (int p = 2; p <= 5; ++p)
            cases.emplace_back(p, PermGroup::closure(p + 1, {Permutation::parse("(0 1)", p + 1)}));
        cases.emplace_back(3, PermGroup::closure(4, {Permutation::parse("(0 1 2 3)", 4)}));
        cases.emplace_back(4, PermGroup::closure(5, {Permutation::parse("(0 1 2 3)", 5)}));
        cases.emplace_back(5, PermGroup::closure(6, {Permutation::parse("(0 1)(2 3)(4 5)", 6)}));
        cases.emplace_back(5, edge_group(fixtures::k4()));
        std::vector<std::string> errors(cases.size());
        parallel_for(cases.size(), jobs(), [&](std::size_t i) {
            try {
                level_checked_sphere_quotient_homology(cases[i].first, cases[i].second);
            } catch (const ConsistencyError& e) {
                errors[i] = e.what();
            }
        });
        for (const std::string& e : errors)
            if (!e.empty()) err << "(d) " << e << "; ";
    }

    // (e) Smith form against the minor-gcd oracle
    {
        std::mt19937 rng(929);
        for (int trial = 0; trial < 500; ++trial) {
            std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
            SparseIntMatrix m(rows, cols);
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c) {
                    if (rng() % 3 == 0) continue;
                    m.add(r, c, Int(static_cast<long>(rng() % 19) - 9));
                }
            if (smith_diagonal(m) != minor_gcd_diagonal(m)) {
                err << "(e) SNF oracle disagreement on trial " << trial << "; ";
                break;
            }
        }
    }
    return err.str();
}

std::string criterion_combinatorial() {
    std::ostringstream err;

    std::map<int, std::size_t> expected_counts = {{2, 0}, {3, 1}, {4, 3}};
    for (const auto& [genus, count] : expected_counts) {
        std::size_t got = relative_cells(genus, 0).size();
        if (got != count)
            err << "non-bm cells of genus " << genus << ": got " << got << ", expected "
                << count << "; ";
    }

    for (auto [g, n] : gn_range())
        if (!check_one_skeleton(g, n)) err << "one-skeleton fails at (" << g << "," << n << "); ";

    // bm closure under contraction, exhaustively over the same range
    for (auto [g, n] : gn_range()) {
        for (const StableGraph& graph : enumerate_stable_graphs(g, n)) {
            if (!in_bm(graph) || graph.num_edges() < 2) continue;
            for (int e = 0; e < graph.num_edges(); ++e)
                if (!in_bm(contract(graph, e))) {
                    err << "bm not closed under contraction at (" << g << "," << n << "); ";
                    e = graph.num_edges();
                }
        }
    }

    std::vector<std::pair<StableGraph, std::size_t>> orders = {
        {fixtures::k4(), 24},
        {fixtures::square_pyramid(), 8},
        {fixtures::triangular_prism(), 12},
        {fixtures::k33(), 72},
    };
    for (const auto& [graph, expect] : orders) {
        std::size_t got = edge_group(graph).order();
        std::size_t oracle = brute_force_edge_group_order(graph);
        if (got != expect || oracle != expect)
            err << "edge group order " << got << " (oracle " << oracle << ") != " << expect
                << "; ";
    }
    return err.str();
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<std::string()> body;
    };
    std::vector<Criterion> criteria = {
        {"1. sphere-quotient homology table (pyramid, prism, K33)",
         criterion_sphere_quotient_table},
        {"2. Delta_3 pipeline: {K4}, S^4 quotient, H~5 = Z", criterion_delta3},
        {"3. Delta_4 pipeline: E1 table and torsion certificates", criterion_delta4},
        {"4. Delta_2 pipeline: no relative cells, everything vanishes", criterion_delta2},
        {"5. simplex quotient regressions (RP^2 and its suspension)",
         criterion_examples_regression},
        {"6. property suite (dd=0, Euler, reflections, levels, SNF oracle)",
         criterion_property_suite},
        {"7. combinatorial checks (cell counts, 1-skeleton, bm closure, edge groups)",
         criterion_combinatorial},
    };

    bool all_ok = true;
    for (const Criterion& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        try {
            detail = c.body();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (detail.empty()) {
            std::cout << "PASS " << c.name << " (" << secs << "s)" << std::endl;
        } else {
            std::cout << "FAIL " << c.name << " (" << secs << "s): " << detail << std::endl;
            all_ok = false;
        }
    }
    return all_ok ? 0 : 1;
}
