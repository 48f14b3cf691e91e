#include "trophom/selftest.hpp"

#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "trophom/errors.hpp"
#include "trophom/parallel.hpp"
#include "trophom/spectral.hpp"

namespace trophom {

namespace fixtures {

namespace {
StableGraph build(int genus, std::vector<int> weights,
                  std::vector<std::pair<int, int>> edges) {
    StableGraph g;
    g.genus = genus;
    g.weights = std::move(weights);
    g.edges = std::move(edges);
    g.validate();
    return g;
}
}  // namespace

StableGraph theta() { return build(2, {0, 0}, {{0, 1}, {0, 1}, {0, 1}}); }
StableGraph dumbbell() { return build(2, {0, 0}, {{0, 0}, {0, 1}, {1, 1}}); }
StableGraph k4() {
    return build(3, {0, 0, 0, 0}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}
StableGraph square_pyramid() {
    return build(4, {0, 0, 0, 0, 0},
                 {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {0, 1}, {0, 2}, {0, 3}, {0, 4}});
}
StableGraph triangular_prism() {
    return build(4, {0, 0, 0, 0, 0, 0},
                 {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {0, 3}, {1, 4}, {2, 5}});
}
StableGraph k33() {
    return build(4, {0, 0, 0, 0, 0, 0},
                 {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
}

}  // namespace fixtures

namespace {

Int dense_determinant(const std::vector<std::vector<Int>>& a) {
    std::size_t n = a.size();
    if (n == 1) return a[0][0];
    Int det = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        std::vector<std::vector<Int>> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Int> row;
            row.reserve(n - 1);
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[r][c]);
            minor.push_back(std::move(row));
        }
        Int term = a[0][j] * dense_determinant(minor);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

}  // namespace

std::vector<Int> minor_gcd_diagonal(const SparseIntMatrix& m) {
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols, Int(0)));
    m.for_each([&](std::size_t r, std::size_t c, const Int& v) { a[r][c] = v; });

    std::size_t n = std::min(rows, cols);
    std::vector<Int> gcds(n + 1, Int(0));
    gcds[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Int g = 0;
        std::vector<std::size_t> rsel(k), csel(k);
        std::function<void(std::size_t, std::size_t)> pick_cols = [&](std::size_t idx,
                                                                      std::size_t start) {
            if (idx == k) {
                std::vector<std::vector<Int>> sub(k, std::vector<Int>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub[i][j] = a[rsel[i]][csel[j]];
                g = gcd(g, dense_determinant(sub));
                return;
            }
            for (std::size_t c = start; c < cols; ++c) {
                csel[idx] = c;
                pick_cols(idx + 1, c + 1);
            }
        };
        std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t idx,
                                                                      std::size_t start) {
            if (idx == k) {
                pick_cols(0, 0);
                return;
            }
            for (std::size_t r = start; r < rows; ++r) {
                rsel[idx] = r;
                pick_rows(idx + 1, r + 1);
            }
        };
        pick_rows(0, 0);
        gcds[k] = abs(g);
    }

    std::vector<Int> diag(n, Int(0));
    for (std::size_t k = 1; k <= n; ++k) {
        if (gcds[k] == 0) break;
        diag[k - 1] = gcds[k] / gcds[k - 1];
    }
    return diag;
}

namespace {

struct Runner {
    const SelftestOptions& options;
    SelftestSummary summary;

    void run(const std::string& name, bool skip, const std::function<std::string()>& body) {
        SelftestCase c;
        c.name = name;
        if (skip) {
            c.skipped = true;
            if (options.progress) options.progress("SKIP " + name);
            summary.cases.push_back(std::move(c));
            return;
        }
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.detail = body();
        } catch (const std::exception& e) {
            c.detail = std::string("exception: ") + e.what();
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.passed = c.detail.empty();
        if (options.progress) {
            std::ostringstream line;
            line << (c.passed ? "PASS " : "FAIL ") << name;
            if (!c.passed) line << ": " << c.detail;
            options.progress(line.str());
        }
        summary.cases.push_back(std::move(c));
    }
};

std::string compare_homology(const std::vector<HomologyGroup>& got,
                             const std::vector<std::pair<int, HomologyGroup>>& expected_nonzero) {
    std::ostringstream err;
    for (std::size_t k = 0; k < got.size(); ++k) {
        HomologyGroup want;
        for (const auto& [deg, grp] : expected_nonzero)
            if (deg == static_cast<int>(k)) want = grp;
        if (!(got[k] == want))
            err << "degree " << k << ": got " << got[k].to_string() << ", expected "
                << want.to_string() << "; ";
    }
    return err.str();
}

HomologyGroup z() { return HomologyGroup{1, {}}; }
HomologyGroup zmod(long d) { return HomologyGroup{0, {Int(d)}}; }

Permutation random_permutation(int degree, std::mt19937& rng) {
    std::vector<std::uint8_t> img(static_cast<std::size_t>(degree));
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation(std::move(img));
}

std::string check_sphere_case(const char* generators, int p,
                              std::vector<std::pair<int, HomologyGroup>> expect) {
    PermGroup g = PermGroup::closure(p + 1, {Permutation::parse(generators, p + 1)});
    SphereQuotientOptions opts;
    opts.use_shortcut = false;
    return compare_homology(reduced_sphere_quotient_homology(p, g, opts), expect);
}

std::string check_graph_quotient(const StableGraph& graph,
                                 std::vector<std::pair<int, HomologyGroup>> expect,
                                 const ProgressFn& progress) {
    PermGroup g = edge_group(graph);
    int p = graph.num_edges() - 1;
    SphereQuotientOptions opts;
    opts.progress = progress;
    return compare_homology(reduced_sphere_quotient_homology(p, g, opts), expect);
}

std::string check_delta(int genus, int n, int jobs,
                        const std::map<int, DegreeCertificate::Status>& statuses,
                        const std::map<int, std::map<long, long>>& bounds,
                        const ProgressFn& progress) {
    DeltaReport report = delta_report(genus, n, {.jobs = jobs, .progress = progress});
    std::ostringstream err;
    for (const auto& [degree, cert] : report.certified.degrees) {
        auto it = statuses.find(degree);
        DegreeCertificate::Status want =
            it == statuses.end() ? DegreeCertificate::Status::Zero : it->second;
        if (cert.status != want) {
            err << "degree " << degree << " has unexpected status; ";
            continue;
        }
        auto bit = bounds.find(degree);
        if (bit != bounds.end())
            for (const auto& [prime, bound] : bit->second) {
                if (!cert.torsion_bounds.count(prime) ||
                    cert.torsion_bounds.at(prime) != bound)
                    err << "degree " << degree << " misses " << prime << "-torsion bound "
                        << bound << "; ";
            }
    }
    return err.str();
}

}  // namespace

SelftestSummary run_selftest(const SelftestOptions& options) {
    Runner runner{options, {}};
    using Status = DegreeCertificate::Status;

    runner.run("group-closure-examples", false, [] {
        std::ostringstream err;
        if (PermGroup::closure(4, {}).order() != 1) err << "trivial closure; ";
        if (PermGroup::closure(4, {Permutation::parse("(0 1 2 3)", 4)}).order() != 4)
            err << "cyclic closure; ";
        if (edge_group(fixtures::k4()).order() != 24) err << "K4 edge group; ";
        try {
            PermGroup::closure(7, {Permutation::parse("(0 1)", 7),
                                   Permutation::parse("(0 1 2 3 4 5 6)", 7)},
                               100);
            err << "cap not enforced; ";
        } catch (const CapExceeded&) {
        }
        return err.str();
    });

    runner.run("projective-plane-quotient", false, [] {
        return check_sphere_case("(0 1 2 3)", 3, {{1, zmod(2)}});
    });

    runner.run("suspended-projective-plane", false, [] {
        return check_sphere_case("(0 1 2 3)", 4, {{2, zmod(2)}});
    });

    runner.run("doubly-suspended-projective-plane", false, [] {
        return check_sphere_case("(0 1)(2 3)(4 5)", 5, {{3, zmod(2)}});
    });

    runner.run("trivial-group-sphere", false, [] {
        return compare_homology(
            reduced_sphere_quotient_homology(4, PermGroup::trivial(5)), {{3, z()}});
    });

    runner.run("k4-cell-sphere", false, [&] {
        return check_graph_quotient(fixtures::k4(), {{4, z()}}, options.progress);
    });

    runner.run("pyramid-quotient", options.quick, [&] {
        return check_graph_quotient(fixtures::square_pyramid(), {{4, zmod(4)}, {5, zmod(2)}},
                                    options.progress);
    });

    runner.run("prism-quotient", options.quick, [&] {
        return check_graph_quotient(fixtures::triangular_prism(), {{5, zmod(2)}, {6, zmod(2)}},
                                    options.progress);
    });

    runner.run("k33-quotient", options.quick, [&] {
        return check_graph_quotient(fixtures::k33(), {{4, zmod(3)}, {5, zmod(4)}, {6, zmod(2)}},
                                    options.progress);
    });

    runner.run("delta-2-vanishes", false, [&] {
        return check_delta(2, 0, options.jobs, {}, {}, options.progress);
    });

    runner.run("delta-3-is-a-sphere", false, [&] {
        return check_delta(3, 0, options.jobs, {{5, Status::Exact}}, {}, options.progress);
    });

    runner.run("delta-4-torsion", options.quick, [&] {
        return check_delta(4, 0, options.jobs,
                           {{5, Status::Torsion}, {6, Status::Torsion}, {7, Status::Torsion}},
                           {{5, {{3, 3}}}, {6, {{2, 2}}}, {7, {{2, 2}}}}, options.progress);
    });

    runner.run("boundary-squares-to-zero", false, [&] {
        std::mt19937 rng(2024);
        std::ostringstream err;
        for (int trial = 0; trial < 12; ++trial) {
            int p = 2 + static_cast<int>(rng() % 4);
            std::vector<Permutation> gens;
            for (unsigned k = rng() % 2; k > 0; --k)
                gens.push_back(random_permutation(p + 1, rng));
            QuotientComplex c = build_quotient(p, PermGroup::closure(p + 1, gens));
            for (std::size_t k = 1; k + 1 < c.boundaries.size(); ++k)
                if (!c.boundaries[k].multiplied_by(c.boundaries[k + 1]).is_zero())
                    err << "dd != 0 at p=" << p << " dim " << k << "; ";
            QuotientHomology h = quotient_homology(c);
            long chi_counts = 0, chi_ranks = 1;
            for (std::size_t k = 0; k < h.orbit_counts.size(); ++k) {
                long sign = k % 2 == 0 ? 1 : -1;
                chi_counts += sign * static_cast<long>(h.orbit_counts[k]);
                chi_ranks += sign * static_cast<long>(h.reduced[k].rank);
            }
            if (chi_counts != chi_ranks) err << "euler mismatch at p=" << p << "; ";
        }
        return err.str();
    });

    runner.run("reflections-contract", false, [&] {
        std::mt19937 rng(4096);
        int samples = options.quick ? 8 : 25;
        int max_p = options.quick ? 4 : 5;
        std::vector<std::string> errors(static_cast<std::size_t>(samples));
        parallel_for(static_cast<std::size_t>(samples), options.jobs, [&](std::size_t i) {
            std::mt19937 local(static_cast<unsigned>(9000 + i));
            int p = 2 + static_cast<int>(local() % static_cast<unsigned>(max_p - 1));
            std::vector<Permutation> gens{random_permutation(p + 1, local)};
            std::vector<std::uint8_t> swap_img(static_cast<std::size_t>(p + 1));
            std::iota(swap_img.begin(), swap_img.end(), 0);
            int a = static_cast<int>(local() % (p + 1));
            int b = (a + 1 + static_cast<int>(local() % p)) % (p + 1);
            std::swap(swap_img[static_cast<std::size_t>(a)], swap_img[static_cast<std::size_t>(b)]);
            gens.emplace_back(std::move(swap_img));
            PermGroup g = PermGroup::closure(p + 1, gens);
            SphereQuotientOptions sq;
            sq.use_shortcut = false;
            for (const HomologyGroup& h : reduced_sphere_quotient_homology(p, g, sq))
                if (!h.is_zero()) errors[i] = "nonzero homology for a reflection group";
        });
        (void)rng;
        std::ostringstream err;
        for (const std::string& e : errors)
            if (!e.empty()) err << e << "; ";
        return err.str();
    });

    runner.run("snf-matches-minor-oracle", false, [&] {
        std::mt19937 rng(515);
        int samples = options.quick ? 60 : 200;
        std::ostringstream err;
        for (int trial = 0; trial < samples; ++trial) {
            std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
            SparseIntMatrix m(rows, cols);
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c) {
                    if (rng() % 3 == 0) continue;
                    m.add(r, c, Int(static_cast<long>(rng() % 19) - 9));
                }
            if (smith_diagonal(m) != minor_gcd_diagonal(m)) {
                err << "disagreement on trial " << trial << "; ";
                break;
            }
        }
        return err.str();
    });

    runner.run("one-skeleton-in-bm", false, [] {
        std::ostringstream err;
        for (auto [g, n] : std::vector<std::pair<int, int>>{
                 {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}, {3, 0}, {3, 1}, {3, 2},
                 {4, 0}, {4, 1}, {4, 2}})
            if (!check_one_skeleton(g, n)) err << "(" << g << "," << n << ") fails; ";
        return err.str();
    });

    runner.run("subdivision-levels-agree", !options.level_check, [&] {
        std::vector<std::pair<int, PermGroup>> cases;
        cases.emplace_back(2, PermGroup::trivial(3));
        cases.emplace_back(3, PermGroup::trivial(4));
        cases.emplace_back(2, PermGroup::closure(3, {Permutation::parse("(0 1)", 3)}));
        cases.emplace_back(3, PermGroup::closure(4, {Permutation::parse("(0 1 2 3)", 4)}));
        cases.emplace_back(4, PermGroup::closure(5, {Permutation::parse("(0 1 2 3)", 5)}));
        cases.emplace_back(5, PermGroup::closure(6, {Permutation::parse("(0 1)(2 3)(4 5)", 6)}));
        cases.emplace_back(5, edge_group(fixtures::k4()));
        std::ostringstream err;
        for (const auto& [p, group] : cases) {
            try {
                level_checked_sphere_quotient_homology(p, group, options.progress);
            } catch (const ConsistencyError& e) {
                err << e.what() << "; ";
            }
        }
        return err.str();
    });

    return runner.summary;
}

}  // namespace trophom
