#include "trophom/spectral.hpp"

#include <algorithm>
#include <sstream>

#include "trophom/errors.hpp"
#include "trophom/parallel.hpp"

namespace trophom {

std::vector<CellSpec> relative_cells(int genus, int n) {
    std::vector<CellSpec> out;
    for (const StableGraph& g : enumerate_stable_graphs(genus, n)) {
        if (in_bm(g)) continue;
        CellSpec cell;
        cell.graph = g;
        cell.p = g.num_edges() - 1;
        cell.edge_symmetries = edge_group(g);
        out.push_back(std::move(cell));
    }
    return out;
}

bool check_one_skeleton(int genus, int n) {
    if (genus < 1) throw InvalidInput("one-skeleton check requires genus >= 1");
    for (const StableGraph& g : enumerate_stable_graphs(genus, n, 2))
        if (!in_bm(g)) return false;
    return true;
}

E1Page e1_page(int genus, int n, const SpectralOptions& options) {
    return e1_page_from_cells(relative_cells(genus, n), genus, n, options);
}

E1Page e1_page_from_cells(const std::vector<CellSpec>& cells, int genus, int n,
                          const SpectralOptions& options) {
    if (genus < 1)
        throw InvalidInput("relative spectral sequence requires genus >= 1");
    // The bm subcomplex must swallow the whole 1-skeleton for the base entry
    // bookkeeping to be valid; abort rather than emit certificates if not.
    if (!check_one_skeleton(genus, n))
        throw ConsistencyError("1-skeleton escapes the bm subcomplex; page assembly aborted");
    for (const CellSpec& cell : cells)
        if (cell.p < 1) throw ConsistencyError("relative cell of dimension 0 cannot occur");

    E1Page page;
    page.genus = genus;
    page.n = n;
    page.max_p = 3 * genus - 4 + n;

    std::vector<std::vector<HomologyGroup>> homologies(cells.size());
    parallel_for(cells.size(), options.jobs, [&](std::size_t i) {
        SphereQuotientOptions sq;
        sq.level = options.level;
        sq.use_shortcut = options.use_shortcut;
        if (options.progress) {
            std::string prefix = "cell-" + std::to_string(i) + " ";
            sq.progress = [prefix, &options](const std::string& s) {
                options.progress(prefix + s);
            };
        }
        homologies[i] =
            reduced_sphere_quotient_homology(cells[i].p, cells[i].edge_symmetries, sq);
    });

    std::map<std::pair<int, int>, std::vector<std::pair<std::string, HomologyGroup>>> grid;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const int p = cells[i].p;
        for (int k = 0; k < static_cast<int>(homologies[i].size()); ++k) {
            const HomologyGroup& h = homologies[i][static_cast<std::size_t>(k)];
            if (h.is_zero()) continue;
            int q = k + 1 - p;
            grid[{p, q}].emplace_back("cell-" + std::to_string(i), h);
        }
    }
    for (auto& [pq, groups] : grid) {
        E1Entry entry;
        entry.p = pq.first;
        entry.q = pq.second;
        entry.groups = std::move(groups);
        page.entries.push_back(std::move(entry));
    }
    return page;
}

namespace {

struct PositionData {
    std::size_t rank = 0;
    std::map<long, int> lparts;  // prime -> exponent of the torsion order
    std::string label;
};

std::map<long, int> factor_small(const Int& value) {
    if (!value.fits_slong_p()) throw ConsistencyError("invariant factor too large to factor");
    long v = value.get_si();
    std::map<long, int> out;
    for (long p = 2; p * p <= v; ++p)
        while (v % p == 0) {
            ++out[p];
            v /= p;
        }
    if (v > 1) ++out[v];
    return out;
}

std::string position_label(int p, int q) {
    std::ostringstream s;
    s << "E1^{" << p << "," << q << "}";
    return s.str();
}

HomologyGroup direct_sum(const std::vector<const HomologyGroup*>& parts) {
    HomologyGroup out;
    std::vector<Int> factors;
    for (const HomologyGroup* part : parts) {
        out.rank += part->rank;
        factors.insert(factors.end(), part->invariant_factors.begin(),
                       part->invariant_factors.end());
    }
    // normalize the factor multiset into a divisibility chain
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < factors.size(); ++i)
            for (std::size_t j = i + 1; j < factors.size(); ++j) {
                if (factors[j] % factors[i] == 0) continue;
                Int g = gcd(factors[i], factors[j]);
                Int l = (factors[i] / g) * factors[j];
                factors[i] = g;
                factors[j] = l;
                changed = true;
            }
    }
    std::sort(factors.begin(), factors.end());
    for (Int& f : factors)
        if (f > 1) out.invariant_factors.push_back(f);
    return out;
}

}  // namespace

TorsionReport infer(const E1Page& page) {
    std::map<std::pair<int, int>, PositionData> positions;
    std::map<std::pair<int, int>, std::vector<const HomologyGroup*>> pieces;

    if (page.base_entry) {
        positions[{0, 0}].rank = 1;
        positions[{0, 0}].label = "base Z";
    }
    static const HomologyGroup base_group{1, {}};
    if (page.base_entry) pieces[{0, 0}].push_back(&base_group);

    for (const E1Entry& entry : page.entries) {
        PositionData& pos = positions[{entry.p, entry.q}];
        for (const auto& [cell, group] : entry.groups) {
            pos.rank += group.rank;
            for (const Int& f : group.invariant_factors)
                for (const auto& [prime, exp] : factor_small(f)) pos.lparts[prime] += exp;
            pieces[{entry.p, entry.q}].push_back(&group);
        }
        pos.label = position_label(entry.p, entry.q);
    }

    TorsionReport report;
    report.max_degree = page.max_p;

    for (int degree = 0; degree <= report.max_degree; ++degree) {
        DegreeCertificate cert;
        std::vector<std::pair<int, int>> on_diagonal;
        for (const auto& [pq, data] : positions)
            if (pq.first + pq.second == degree) on_diagonal.push_back(pq);

        if (on_diagonal.empty()) {
            cert.status = DegreeCertificate::Status::Zero;
            cert.argument.push_back("no E1 terms in total degree " + std::to_string(degree));
            report.degrees[degree] = std::move(cert);
            continue;
        }

        // partner scan: all positions any d_r could connect to this one
        auto partners_of = [&](const std::pair<int, int>& pq) {
            std::vector<std::pair<int, int>> out_targets, in_sources;
            for (int r = 1; r <= pq.first; ++r) {
                auto it = positions.find({pq.first - r, pq.second + r - 1});
                if (it != positions.end()) out_targets.push_back(it->first);
            }
            for (int r = 1; pq.first + r <= page.max_p; ++r) {
                auto it = positions.find({pq.first + r, pq.second - r + 1});
                if (it != positions.end()) in_sources.push_back(it->first);
            }
            return std::make_pair(out_targets, in_sources);
        };

        bool all_isolated = true;
        for (const auto& pq : on_diagonal) {
            auto [outs, ins] = partners_of(pq);
            if (!outs.empty() || !ins.empty()) all_isolated = false;
        }

        if (all_isolated) {
            std::vector<const HomologyGroup*> parts;
            for (const auto& pq : on_diagonal)
                for (const HomologyGroup* g : pieces[pq]) parts.push_back(g);
            HomologyGroup merged = direct_sum(parts);
            if (degree == 0) {
                if (merged.rank < 1)
                    throw ConsistencyError("degree-0 page entry lost the base class");
                merged.rank -= 1;  // reduced homology
            }
            if (merged.is_zero()) {
                cert.status = DegreeCertificate::Status::Zero;
                cert.argument.push_back(
                    degree == 0 ? "only the base Z survives in degree 0; the space is connected"
                                : "all E1 terms in this degree vanish");
            } else if (on_diagonal.size() == 1) {
                cert.status = DegreeCertificate::Status::Exact;
                cert.exact_value = merged;
                cert.rank_lower_bound = merged.rank;
                for (const Int& f : merged.invariant_factors)
                    for (const auto& [prime, exp] : factor_small(f)) {
                        Int bound = 1;
                        for (int e = 0; e < exp; ++e) bound *= prime;
                        cert.torsion_bounds[prime] =
                            cert.torsion_bounds.count(prime) ? cert.torsion_bounds[prime] * bound
                                                             : bound;
                    }
                cert.argument.push_back(positions[on_diagonal[0]].label + " = " +
                                        merged.to_string() +
                                        " is untouched by every differential, so it survives to "
                                        "E_infinity unchanged");
            } else {
                cert.status = DegreeCertificate::Status::Torsion;
                cert.rank_lower_bound = merged.rank;
                for (const auto& pq : on_diagonal)
                    for (const auto& [prime, exp] : positions[pq].lparts) {
                        Int bound = 1;
                        for (int e = 0; e < exp; ++e) bound *= prime;
                        cert.torsion_bounds[prime] = cert.torsion_bounds.count(prime)
                                                         ? cert.torsion_bounds[prime] * bound
                                                         : bound;
                    }
                cert.argument.push_back(
                    "every E1 term in this degree is untouched by differentials; orders multiply "
                    "across the filtration");
            }
            report.degrees[degree] = std::move(cert);
            continue;
        }

        // General case: divide each l-part by everything a differential
        // could move in or out, across all pages.
        std::map<long, Int> degree_bounds;
        std::size_t degree_rank = 0;
        std::vector<std::string> argument;
        for (const auto& pq : on_diagonal) {
            const PositionData& pos = positions[pq];
            auto [outs, ins] = partners_of(pq);

            long rank_budget = static_cast<long>(pos.rank);
            for (const auto& partner : outs) rank_budget -= static_cast<long>(positions[partner].rank);
            for (const auto& partner : ins) rank_budget -= static_cast<long>(positions[partner].rank);
            if (rank_budget > 0) degree_rank += static_cast<std::size_t>(rank_budget);

            bool infinite_in = false;
            for (const auto& partner : ins)
                if (positions[partner].rank > 0) infinite_in = true;

            for (const auto& [prime, exp] : pos.lparts) {
                int budget = exp;
                std::ostringstream why;
                why << pos.label << " has " << prime << "-part " << prime << "^" << exp;
                if (infinite_in) {
                    budget = 0;
                    why << "; an incoming differential from a free group can cover it";
                } else {
                    for (const auto& partner : outs) {
                        auto it = positions[partner].lparts.find(prime);
                        int drop = it == positions[partner].lparts.end() ? 0 : it->second;
                        if (drop > 0) {
                            budget -= drop;
                            why << "; target " << positions[partner].label << " absorbs "
                                << prime << "^" << drop;
                        }
                    }
                    for (const auto& partner : ins) {
                        auto it = positions[partner].lparts.find(prime);
                        int drop = it == positions[partner].lparts.end() ? 0 : it->second;
                        if (drop > 0) {
                            budget -= drop;
                            why << "; source " << positions[partner].label << " covers "
                                << prime << "^" << drop;
                        }
                    }
                }
                if (budget > 0) {
                    Int bound = 1;
                    for (int e = 0; e < budget; ++e) bound *= prime;
                    degree_bounds[prime] =
                        degree_bounds.count(prime) ? degree_bounds[prime] * bound : bound;
                    why << "; at least " << prime << "^" << budget << " survives";
                    argument.push_back(why.str());
                }
            }
        }

        if (!degree_bounds.empty() || degree_rank > 0) {
            cert.status = DegreeCertificate::Status::Torsion;
            cert.torsion_bounds = std::move(degree_bounds);
            cert.rank_lower_bound = degree_rank;
            cert.argument = std::move(argument);
        } else {
            cert.status = DegreeCertificate::Status::Undetermined;
            cert.argument.push_back("order bounds divide to 1; nothing is certified");
        }
        report.degrees[degree] = std::move(cert);
    }
    return report;
}

DeltaReport delta_report(int genus, int n, const SpectralOptions& options) {
    DeltaReport report;
    report.genus = genus;
    report.n = n;
    report.cells = relative_cells(genus, n);
    report.page = e1_page_from_cells(report.cells, genus, n, options);
    report.certified = infer(report.page);
    return report;
}

nlohmann::json delta_report_to_json(const DeltaReport& report) {
    nlohmann::json j;
    j["g"] = report.genus;
    j["n"] = report.n;

    j["relative_cells"] = nlohmann::json::array();
    for (std::size_t i = 0; i < report.cells.size(); ++i) {
        nlohmann::json cell;
        cell["id"] = "cell-" + std::to_string(i);
        cell["p"] = report.cells[i].p;
        cell["edge_group_order"] = report.cells[i].edge_symmetries.order();
        cell["graph"] = graph_to_json(report.cells[i].graph);
        j["relative_cells"].push_back(std::move(cell));
    }

    j["e1"] = nlohmann::json::array();
    if (report.page.base_entry) {
        nlohmann::json base;
        base["p"] = 0;
        base["q"] = 0;
        nlohmann::json group = homology_group_to_json(HomologyGroup{1, {}});
        group["cell"] = "base";
        base["groups"] = nlohmann::json::array({group});
        j["e1"].push_back(std::move(base));
    }
    for (const E1Entry& entry : report.page.entries) {
        nlohmann::json e;
        e["p"] = entry.p;
        e["q"] = entry.q;
        e["groups"] = nlohmann::json::array();
        for (const auto& [cell, group] : entry.groups) {
            nlohmann::json gj = homology_group_to_json(group);
            gj["cell"] = cell;
            e["groups"].push_back(std::move(gj));
        }
        j["e1"].push_back(std::move(e));
    }

    nlohmann::json certified;
    certified["zero"] = nlohmann::json::array();
    certified["undetermined"] = nlohmann::json::array();
    certified["exact"] = nlohmann::json::object();
    certified["torsion"] = nlohmann::json::object();
    certified["bounds"] = nlohmann::json::object();
    certified["rank_at_least"] = nlohmann::json::object();
    certified["arguments"] = nlohmann::json::object();
    for (const auto& [degree, cert] : report.certified.degrees) {
        std::string key = std::to_string(degree);
        certified["arguments"][key] = cert.argument;
        switch (cert.status) {
            case DegreeCertificate::Status::Zero:
                certified["zero"].push_back(degree);
                break;
            case DegreeCertificate::Status::Exact:
                certified["exact"][key] = homology_group_to_json(cert.exact_value);
                break;
            case DegreeCertificate::Status::Torsion: {
                nlohmann::json primes = nlohmann::json::array();
                nlohmann::json bounds = nlohmann::json::object();
                for (const auto& [prime, bound] : cert.torsion_bounds) {
                    primes.push_back(prime);
                    bounds[std::to_string(prime)] = bound.get_si();
                }
                certified["torsion"][key] = std::move(primes);
                certified["bounds"][key] = std::move(bounds);
                if (cert.rank_lower_bound > 0)
                    certified["rank_at_least"][key] = cert.rank_lower_bound;
                break;
            }
            case DegreeCertificate::Status::Undetermined:
                certified["undetermined"].push_back(degree);
                break;
        }
    }
    j["certified"] = std::move(certified);
    return j;
}

}  // namespace trophom
