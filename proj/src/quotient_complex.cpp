// Orbit-level chain complex of a barycentrically subdivided sphere quotient.
//
// A k-simplex of the subdivision is a flag of k+1 "cells" ordered by the
// face relation; the group acts memberwise and preserves the grading, so
// flags have canonical orbit representatives and the alternating-sign
// boundary descends to orbit classes. Orbits are enumerated by extending
// shorter canonical flags at the top and re-canonicalizing, which keeps
// memory proportional to the number of orbits rather than of simplices.

#include "trophom/quotient_complex.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "trophom/errors.hpp"

namespace trophom {

namespace {

inline void hash_mix(std::size_t& h, std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
}

// Vertex kind for one barycentric subdivision: a nonempty proper subset.
struct Level1Ops {
    using Vert = Subset;
    Subset full;

    Vert act(const Permutation& g, const Vert& v) const { return act_subset(g, v); }
    bool less(const Vert& a, const Vert& b) const { return subset_less(a, b); }

    std::vector<Vert> universe() const {
        std::vector<Vert> out;
        for (Subset s = 1; s < full; ++s) out.push_back(s);
        return out;
    }

    // Proper supersets of t, excluding the full set.
    std::vector<Vert> extensions(const Vert& t) const {
        std::vector<Vert> out;
        Subset comp = full & ~t;
        for (Subset s = comp; s; s = (s - 1) & comp) {
            Subset w = t | s;
            if (w != full) out.push_back(w);
        }
        return out;
    }

    static std::size_t hash(const Vert& v) { return std::hash<Subset>{}(v); }
};

// Vertex kind for the double subdivision: a level-1 chain.
struct Level2Ops {
    using Vert = SubsetChain;
    Subset full;

    Vert act(const Permutation& g, const Vert& v) const { return act_chain(g, v); }
    bool less(const Vert& a, const Vert& b) const { return chain_less(a, b); }

    std::vector<Vert> universe() const {
        std::vector<Vert> out;
        SubsetChain cur;
        std::function<void(Subset)> rec = [&](Subset last) {
            if (!cur.sets.empty()) out.push_back(cur);
            Subset comp = full & ~last;
            for (Subset s = comp; s; s = (s - 1) & comp) {
                Subset w = last | s;
                if (w == full) continue;
                cur.sets.push_back(w);
                rec(w);
                cur.sets.pop_back();
            }
        };
        rec(0);
        return out;
    }

    // Proper superchains of t: insert at least one subset into some gap.
    std::vector<Vert> extensions(const Vert& t) const {
        std::vector<Vert> out;
        SubsetChain acc;
        std::function<void(std::size_t, Subset, bool)> rec = [&](std::size_t gap, Subset low,
                                                                 bool inserted) {
            Subset bound = gap < t.sets.size() ? t.sets[gap] : full;
            Subset comp = bound & ~low;
            for (Subset s = comp; s; s = (s - 1) & comp) {
                Subset w = low | s;
                if (w == bound) continue;
                acc.sets.push_back(w);
                rec(gap, w, true);
                acc.sets.pop_back();
            }
            if (gap < t.sets.size()) {
                acc.sets.push_back(t.sets[gap]);
                rec(gap + 1, t.sets[gap], inserted);
                acc.sets.pop_back();
            } else if (inserted) {
                out.push_back(acc);
            }
        };
        rec(0, 0, false);
        return out;
    }

    static std::size_t hash(const Vert& v) {
        std::size_t h = v.sets.size();
        for (Subset s : v.sets) hash_mix(h, s);
        return h;
    }
};

template <class Ops>
struct FlagBuild {
    using Vert = typename Ops::Vert;
    using Flag = std::vector<Vert>;

    const Ops ops;
    const PermGroup& group;
    ProgressFn progress;

    bool flag_less(const Flag& a, const Flag& b) const {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!(a[i] == b[i])) return ops.less(a[i], b[i]);
        }
        return false;
    }

    Flag canonical_flag(const Flag& f) const {
        Flag best = f;
        Flag cand(f.size());
        for (const Permutation& g : group.elements()) {
            if (g.is_identity()) continue;
            for (std::size_t i = 0; i < f.size(); ++i) cand[i] = ops.act(g, f[i]);
            if (flag_less(cand, best)) best = cand;
        }
        return best;
    }

    struct FlagHash {
        std::size_t operator()(const Flag& f) const {
            std::size_t h = f.size();
            for (const Vert& v : f) hash_mix(h, Ops::hash(v));
            return h;
        }
    };

    using Index = std::unordered_map<Flag, std::size_t, FlagHash>;

    void report(int k, std::size_t n) const {
        if (!progress) return;
        std::ostringstream msg;
        msg << "  dim " << k << ": " << n << " orbit(s)";
        progress(msg.str());
    }

    void run(int p, std::vector<std::vector<Flag>>& reps_out,
             std::vector<SparseIntMatrix>& boundaries_out) const {
        const int dims = p;  // dimensions 0..p-1
        reps_out.clear();
        boundaries_out.clear();

        // Dimension 0.
        std::vector<Flag> reps;
        {
            std::unordered_map<Flag, bool, FlagHash> seen;
            for (const Vert& v : ops.universe()) {
                Flag f = canonical_flag(Flag{v});
                seen.emplace(std::move(f), true);
            }
            for (auto& [f, unused] : seen) reps.push_back(f);
            std::sort(reps.begin(), reps.end(),
                      [&](const Flag& a, const Flag& b) { return flag_less(a, b); });
        }
        report(0, reps.size());
        reps_out.push_back(reps);
        boundaries_out.emplace_back(0, reps.size());

        for (int k = 1; k < dims; ++k) {
            Index prev_index;
            prev_index.reserve(reps.size() * 2);
            for (std::size_t i = 0; i < reps.size(); ++i) prev_index.emplace(reps[i], i);

            std::unordered_map<Flag, bool, FlagHash> seen;
            for (const Flag& f : reps) {
                for (const Vert& w : ops.extensions(f.back())) {
                    Flag cand = f;
                    cand.push_back(w);
                    seen.emplace(canonical_flag(cand), true);
                }
            }
            std::vector<Flag> next;
            next.reserve(seen.size());
            for (auto& [f, unused] : seen) next.push_back(f);
            std::sort(next.begin(), next.end(),
                      [&](const Flag& a, const Flag& b) { return flag_less(a, b); });
            report(k, next.size());

            SparseIntMatrix boundary(reps.size(), next.size());
            Flag face;
            for (std::size_t j = 0; j < next.size(); ++j) {
                const Flag& f = next[j];
                for (std::size_t omit = 0; omit < f.size(); ++omit) {
                    face.clear();
                    for (std::size_t i = 0; i < f.size(); ++i)
                        if (i != omit) face.push_back(f[i]);
                    auto it = prev_index.find(canonical_flag(face));
                    if (it == prev_index.end())
                        throw ConsistencyError("face orbit missing from enumeration");
                    boundary.add(it->second, j, (omit % 2 == 0) ? Int(1) : Int(-1));
                }
            }
            boundaries_out.push_back(std::move(boundary));
            reps_out.push_back(next);
            reps = std::move(next);
        }
    }
};

}  // namespace

std::size_t QuotientComplex::count(int k) const {
    if (k < 0 || k > dim()) return 0;
    return level == 1 ? simplices[static_cast<std::size_t>(k)].size()
                      : simplices2[static_cast<std::size_t>(k)].size();
}

std::vector<std::size_t> QuotientComplex::orbit_counts() const {
    std::vector<std::size_t> out;
    for (int k = 0; k <= dim(); ++k) out.push_back(count(k));
    return out;
}

QuotientComplex build_quotient(int p, const PermGroup& group, int level,
                               const ProgressFn& progress) {
    if (p < 1) throw InvalidInput("simplex dimension must be at least 1");
    if (p + 1 > 31) throw InvalidInput("simplex dimension too large");
    if (group.degree() != p + 1) throw InvalidInput("group degree must equal p+1");
    if (level != 1 && level != 2) throw InvalidInput("subdivision level must be 1 or 2");

    QuotientComplex out;
    out.p = p;
    out.level = level;
    out.group = group;

    const Subset full = (Subset{1} << (p + 1)) - 1;
    if (level == 1) {
        FlagBuild<Level1Ops> build{Level1Ops{full}, group, progress};
        std::vector<std::vector<std::vector<Subset>>> reps;
        build.run(p, reps, out.boundaries);
        out.simplices.resize(reps.size());
        for (std::size_t k = 0; k < reps.size(); ++k) {
            out.simplices[k].reserve(reps[k].size());
            for (auto& flag : reps[k]) out.simplices[k].push_back(SubsetChain{std::move(flag)});
        }
    } else {
        FlagBuild<Level2Ops> build{Level2Ops{full}, group, progress};
        build.run(p, out.simplices2, out.boundaries);
    }
    return out;
}

}  // namespace trophom
