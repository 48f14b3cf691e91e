#include "trophom/subset_chain.hpp"

#include <bit>
#include <sstream>

#include "trophom/errors.hpp"

namespace trophom {

Subset act_subset(const Permutation& g, Subset s) {
    Subset out = 0;
    while (s) {
        int i = std::countr_zero(s);
        s &= s - 1;
        out |= Subset{1} << g.apply(i);
    }
    return out;
}

bool subset_less(Subset a, Subset b) {
    while (a && b) {
        int i = std::countr_zero(a);
        int j = std::countr_zero(b);
        if (i != j) return i < j;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;  // proper prefix compares low
}

std::string SubsetChain::to_string() const {
    std::ostringstream out;
    for (std::size_t k = 0; k < sets.size(); ++k) {
        if (k) out << '<';
        out << '{';
        Subset s = sets[k];
        bool first = true;
        while (s) {
            int i = std::countr_zero(s);
            s &= s - 1;
            if (!first) out << ' ';
            out << i;
            first = false;
        }
        out << '}';
    }
    return out.str();
}

bool chain_less(const SubsetChain& a, const SubsetChain& b) {
    if (a.sets.size() != b.sets.size()) return a.sets.size() < b.sets.size();
    for (std::size_t i = 0; i < a.sets.size(); ++i) {
        if (a.sets[i] != b.sets[i]) return subset_less(a.sets[i], b.sets[i]);
    }
    return false;
}

bool is_valid_chain(const SubsetChain& c, int degree) {
    if (degree < 1 || degree > 31) return false;
    const Subset full = (Subset{1} << degree) - 1;
    if (c.sets.empty()) return false;
    for (std::size_t i = 0; i < c.sets.size(); ++i) {
        Subset s = c.sets[i];
        if (s == 0 || (s & ~full) != 0 || s == full) return false;
        if (i > 0) {
            Subset prev = c.sets[i - 1];
            if ((prev & s) != prev || prev == s) return false;  // strict inclusion
        }
    }
    return true;
}

SubsetChain act_chain(const Permutation& g, const SubsetChain& c) {
    SubsetChain out;
    out.sets.reserve(c.sets.size());
    for (Subset s : c.sets) out.sets.push_back(act_subset(g, s));
    return out;
}

SubsetChain canonical_rep(const PermGroup& group, const SubsetChain& c) {
    SubsetChain best = c;
    SubsetChain candidate;
    candidate.sets.resize(c.sets.size());
    for (const Permutation& g : group.elements()) {
        if (g.is_identity()) continue;
        for (std::size_t i = 0; i < c.sets.size(); ++i)
            candidate.sets[i] = act_subset(g, c.sets[i]);
        if (chain_less(candidate, best)) best = candidate;
    }
    return best;
}

}  // namespace trophom
