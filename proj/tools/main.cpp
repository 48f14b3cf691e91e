// Command-line front end: sphere quotients, stable graph enumeration, the
// relative spectral sequence pipeline, and the self-test suite.
//
// Exit codes: 0 success, 1 self-test failure, 2 invalid input,
// 3 group/cap budget exceeded, 4 internal consistency failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "trophom/errors.hpp"
#include "trophom/selftest.hpp"
#include "trophom/spectral.hpp"

using namespace trophom;

namespace {

ProgressFn stderr_progress() {
    return [](const std::string& line) { std::cerr << line << std::endl; };
}

int default_jobs() {
    if (const char* env = std::getenv("TROPHOM_JOBS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

std::string pretty_group(const HomologyGroup& h) {
    if (h.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    if (h.rank == 1) {
        out << "ℤ";
        first = false;
    } else if (h.rank > 1) {
        out << "ℤ^" << h.rank;
        first = false;
    }
    for (const Int& d : h.invariant_factors) {
        if (!first) out << " ⊕ ";
        out << "ℤ/" << d.get_str() << "ℤ";
        first = false;
    }
    return out.str();
}

StableGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open graph file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput("graph file is not valid JSON: " + std::string(e.what()));
    }
    return graph_from_json(j);
}

nlohmann::json sphere_quotient_json(int p, const PermGroup& group, int level,
                                    const std::string& provenance,
                                    const std::vector<HomologyGroup>& homology) {
    nlohmann::json j;
    j["p"] = p;
    j["level"] = level;
    j["provenance"] = provenance;
    j["group"] = {{"degree", group.degree()}, {"order", group.order()}};
    j["group"]["generators"] = nlohmann::json::array();
    for (const Permutation& g : group.generators())
        j["group"]["generators"].push_back(g.cycle_string());
    j["homology"] = nlohmann::json::array();
    for (std::size_t k = 0; k < homology.size(); ++k) {
        nlohmann::json h = homology_group_to_json(homology[k]);
        h["degree"] = k;
        j["homology"].push_back(std::move(h));
    }
    return j;
}

int cmd_sphere_quotient(int p, const std::string& group_str, const std::string& graph_path,
                        int level, bool no_shortcut, bool verify, const std::string& format,
                        std::size_t cap, const std::string& export_path) {
    PermGroup group;
    std::string provenance;
    if (!graph_path.empty()) {
        StableGraph graph = load_graph(graph_path);
        p = graph.num_edges() - 1;
        group = edge_group(graph, cap);
        provenance = "edge symmetries of " + graph_path;
    } else {
        if (p < 1) throw InvalidInput("--p must be at least 1");
        group = PermGroup::closure(p + 1, {Permutation::parse(group_str, p + 1)}, cap);
        provenance = "generated by " + group_str;
    }

    if (!export_path.empty()) {
        QuotientComplex complex = build_quotient(p, group, level, stderr_progress());
        std::ofstream out(export_path);
        if (!out) throw InvalidInput("cannot write complex file: " + export_path);
        out << quotient_complex_to_json(complex).dump(2) << "\n";
    }

    std::vector<HomologyGroup> homology;
    if (verify) {
        homology = level_checked_sphere_quotient_homology(p, group, stderr_progress());
    } else {
        SphereQuotientOptions opts;
        opts.level = level;
        opts.use_shortcut = !no_shortcut;
        opts.progress = stderr_progress();
        homology = reduced_sphere_quotient_homology(p, group, opts);
    }

    if (format == "json") {
        std::cout << sphere_quotient_json(p, group, level, provenance, homology).dump(2)
                  << std::endl;
    } else {
        std::cout << "S^" << (p - 1) << "/G, " << provenance << ", |G| = " << group.order()
                  << ", subdivision level " << level << "\n";
        for (std::size_t k = 0; k < homology.size(); ++k)
            std::cout << "H̃_" << k << " = " << pretty_group(homology[k]) << "\n";
    }
    return 0;
}

int cmd_enumerate(int genus, int n, int max_edges, const std::string& format) {
    std::vector<StableGraph> graphs =
        max_edges > 0 ? enumerate_stable_graphs(genus, n, max_edges)
                      : enumerate_stable_graphs(genus, n);
    if (format == "json") {
        nlohmann::json j;
        j["g"] = genus;
        j["n"] = n;
        j["count"] = graphs.size();
        j["cells"] = nlohmann::json::array();
        for (const StableGraph& g : graphs)
            j["cells"].push_back({{"bm", in_bm(g)}, {"graph", graph_to_json(g)}});
        std::cout << j.dump(2) << std::endl;
    } else {
        std::cout << graphs.size() << " stable graph(s) of genus " << genus << " with " << n
                  << " marking(s)\n";
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            const StableGraph& g = graphs[i];
            std::cout << i << ": V=" << g.num_vertices() << " E=" << g.num_edges()
                      << " weights=[";
            for (int v = 0; v < g.num_vertices(); ++v)
                std::cout << (v ? "," : "") << g.weights[static_cast<std::size_t>(v)];
            std::cout << "] edges=[";
            for (int e = 0; e < g.num_edges(); ++e) {
                auto [a, b] = g.edges[static_cast<std::size_t>(e)];
                std::cout << (e ? "," : "") << a << "-" << b;
            }
            std::cout << "]";
            if (n > 0) {
                std::cout << " marks=[";
                for (int m = 0; m < n; ++m)
                    std::cout << (m ? "," : "") << g.markings[static_cast<std::size_t>(m)];
                std::cout << "]";
            }
            std::cout << (in_bm(g) ? " bm" : " non-bm") << "\n";
        }
    }
    return 0;
}

int cmd_delta(int genus, int n, int level, bool no_shortcut, const std::string& format,
              int jobs, std::size_t cap) {
    SpectralOptions opts;
    opts.level = level;
    opts.use_shortcut = !no_shortcut;
    opts.jobs = jobs;
    opts.group_cap = cap;
    opts.progress = stderr_progress();
    DeltaReport report = delta_report(genus, n, opts);

    if (format == "json") {
        std::cout << delta_report_to_json(report).dump(2) << std::endl;
        return 0;
    }

    std::cout << "Δ_{" << genus << "," << n << "} relative to the bm subcomplex\n";
    std::cout << report.cells.size() << " relative cell(s)\n";
    for (std::size_t i = 0; i < report.cells.size(); ++i) {
        const CellSpec& cell = report.cells[i];
        std::cout << "  cell-" << i << ": p=" << cell.p << ", V=" << cell.graph.num_vertices()
                  << ", E=" << cell.graph.num_edges()
                  << ", edge group order " << cell.edge_symmetries.order() << "\n";
    }
    std::cout << "E1 page:\n  E1^{0,0} = ℤ (base)\n";
    for (const E1Entry& entry : report.page.entries) {
        std::cout << "  E1^{" << entry.p << "," << entry.q << "} = ";
        for (std::size_t i = 0; i < entry.groups.size(); ++i) {
            if (i) std::cout << " ⊕ ";
            std::cout << pretty_group(entry.groups[i].second);
        }
        std::cout << "  [";
        for (std::size_t i = 0; i < entry.groups.size(); ++i)
            std::cout << (i ? ", " : "") << entry.groups[i].first;
        std::cout << "]\n";
    }
    std::cout << "certified reduced homology:\n";
    std::vector<int> zeros, undetermined;
    for (const auto& [degree, cert] : report.certified.degrees) {
        switch (cert.status) {
            case DegreeCertificate::Status::Zero:
                zeros.push_back(degree);
                break;
            case DegreeCertificate::Status::Undetermined:
                undetermined.push_back(degree);
                break;
            case DegreeCertificate::Status::Exact:
                std::cout << "  H̃_" << degree << " = " << pretty_group(cert.exact_value)
                          << " (exact)\n";
                break;
            case DegreeCertificate::Status::Torsion:
                for (const auto& [prime, bound] : cert.torsion_bounds)
                    std::cout << "  H̃_" << degree << " contains " << prime
                              << "-torsion of order ≥ " << bound.get_str() << "\n";
                if (cert.rank_lower_bound > 0)
                    std::cout << "  H̃_" << degree << " has rank ≥ "
                              << cert.rank_lower_bound << "\n";
                break;
        }
    }
    auto print_list = [](const char* label, const std::vector<int>& degrees) {
        if (degrees.empty()) return;
        std::cout << "  " << label << " for k ∈ {";
        for (std::size_t i = 0; i < degrees.size(); ++i)
            std::cout << (i ? ", " : "") << degrees[i];
        std::cout << "}\n";
    };
    print_list("H̃_k = 0", zeros);
    print_list("H̃_k undetermined", undetermined);
    return 0;
}

int cmd_check_skeleton(int genus, int n, const std::string& format) {
    bool ok = check_one_skeleton(genus, n);
    if (format == "json") {
        nlohmann::json j;
        j["g"] = genus;
        j["n"] = n;
        j["one_skeleton_in_bm"] = ok;
        std::cout << j.dump(2) << std::endl;
    } else {
        std::cout << (ok ? "true" : "false") << "\n";
    }
    return 0;
}

int cmd_selftest(bool quick, bool level_check, int jobs, const std::string& format) {
    SelftestOptions opts;
    opts.quick = quick;
    opts.level_check = level_check;
    opts.jobs = jobs;
    if (format != "json") {
        opts.progress = [](const std::string& line) { std::cout << line << std::endl; };
    } else {
        opts.progress = stderr_progress();
    }
    SelftestSummary summary = run_selftest(opts);

    if (format == "json") {
        nlohmann::json j;
        j["all_passed"] = summary.all_passed();
        j["cases"] = nlohmann::json::array();
        for (const SelftestCase& c : summary.cases)
            j["cases"].push_back({{"name", c.name},
                                  {"passed", c.passed},
                                  {"skipped", c.skipped},
                                  {"seconds", c.seconds},
                                  {"detail", c.detail}});
        std::cout << j.dump(2) << std::endl;
    } else {
        int passed = 0, failed = 0, skipped = 0;
        for (const SelftestCase& c : summary.cases) {
            if (c.skipped)
                ++skipped;
            else if (c.passed)
                ++passed;
            else
                ++failed;
        }
        std::cout << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
    }
    return summary.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact integral homology of sphere quotients and tropical moduli spaces"};
    app.require_subcommand(1);

    int p = 0, genus = 0, n = 0, level = 1, jobs = default_jobs(), max_edges = 0;
    std::string group_str, graph_path, format = "table", export_path;
    std::size_t cap = kDefaultGroupCap;
    bool no_shortcut = false, verify = false, quick = false, level_check = false;

    CLI::App* sphere = app.add_subcommand("sphere-quotient",
                                          "reduced homology of S^{p-1}/G for G a permutation "
                                          "group on the p+1 simplex vertices");
    CLI::Option* opt_p = sphere->add_option("--p", p, "simplex dimension");
    CLI::Option* opt_group =
        sphere->add_option("--group", group_str, "generators in cycle notation, e.g. \"(0 1)(2 3)\"");
    CLI::Option* opt_graph =
        sphere->add_option("--graph", graph_path, "stable graph JSON file; G = edge symmetries");
    opt_graph->excludes(opt_group)->excludes(opt_p);
    sphere->add_option("--subdivide", level, "barycentric subdivision level")
        ->check(CLI::IsMember({1, 2}));
    sphere->add_flag("--no-shortcut", no_shortcut, "skip the reflection shortcut");
    sphere->add_flag("--verify-subdivision", verify,
                     "compute at levels 1 and 2 and fail on disagreement");
    sphere->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
    sphere->add_option("--group-cap", cap, "maximum group order");
    sphere->add_option("--jobs", jobs, "worker threads");
    sphere->add_option("--export-complex", export_path,
                       "also write the quotient chain complex (counts and boundary triplets)");

    CLI::App* graphs = app.add_subcommand("graphs", "stable graph utilities");
    CLI::App* enumerate = graphs->add_subcommand("enumerate",
                                                 "isomorphism classes of stable graphs");
    enumerate->add_option("--g", genus, "genus")->required();
    enumerate->add_option("--n", n, "number of markings");
    enumerate->add_option("--max-edges", max_edges, "restrict to at most this many edges");
    enumerate->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));

    CLI::App* delta = app.add_subcommand(
        "delta", "relative spectral sequence and torsion certificates for Delta_{g,n}");
    delta->add_option("--g", genus, "genus")->required();
    delta->add_option("--n", n, "number of markings");
    delta->add_option("--subdivide", level, "barycentric subdivision level")
        ->check(CLI::IsMember({1, 2}));
    delta->add_flag("--no-shortcut", no_shortcut, "skip the reflection shortcut");
    delta->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
    delta->add_option("--jobs", jobs, "worker threads");
    delta->add_option("--group-cap", cap, "maximum group order");

    CLI::App* skeleton =
        app.add_subcommand("check-skeleton", "is the 1-skeleton inside the bm subcomplex?");
    skeleton->add_option("--g", genus, "genus")->required();
    skeleton->add_option("--n", n, "number of markings");
    skeleton->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));

    CLI::App* selftest = app.add_subcommand("selftest", "known-answer and property suites");
    selftest->add_flag("--quick", quick, "skip the p >= 7 quotients");
    selftest->add_flag("--level-check", level_check, "run subdivision level agreement checks");
    selftest->add_option("--jobs", jobs, "worker threads");
    selftest->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(sphere)) {
            if (graph_path.empty() && (!*opt_p || !*opt_group))
                throw InvalidInput("need --p and --group, or --graph");
            return cmd_sphere_quotient(p, group_str, graph_path, level, no_shortcut, verify,
                                       format, cap, export_path);
        }
        if (app.got_subcommand(graphs)) {
            if (!graphs->got_subcommand(enumerate)) throw InvalidInput("expected: graphs enumerate");
            return cmd_enumerate(genus, n, max_edges, format);
        }
        if (app.got_subcommand(delta)) return cmd_delta(genus, n, level, no_shortcut, format, jobs, cap);
        if (app.got_subcommand(skeleton)) return cmd_check_skeleton(genus, n, format);
        if (app.got_subcommand(selftest)) return cmd_selftest(quick, level_check, jobs, format);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 3;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal check failed: " << e.what() << std::endl;
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 4;
    }
    return 0;
}
