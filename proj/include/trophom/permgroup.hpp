#pragma once

#include <cstddef>
#include <vector>

#include "trophom/permutation.hpp"

namespace trophom {

inline constexpr std::size_t kDefaultGroupCap = 1'000'000;

// A finite permutation group on {0..m-1}, materialized in full.
// Immutable after construction; safe to share across threads.
class PermGroup {
public:
    // Trivial group on zero points.
    PermGroup() : elements_{Permutation()} {}

    // BFS closure of the generators. Throws CapExceeded if the group has
    // more than `cap` elements, InvalidInput on a degree mismatch.
    static PermGroup closure(int degree, std::vector<Permutation> generators,
                             std::size_t cap = kDefaultGroupCap);

    static PermGroup trivial(int degree);

    int degree() const { return degree_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<Permutation>& elements() const { return elements_; }
    const std::vector<Permutation>& generators() const { return generators_; }

    bool is_trivial() const { return elements_.size() == 1; }

    // True iff some element moves exactly two points.
    bool contains_transposition() const;

    friend bool operator==(const PermGroup& a, const PermGroup& b) {
        return a.degree_ == b.degree_ && a.elements_ == b.elements_;
    }

private:
    int degree_ = 0;
    std::vector<Permutation> generators_;
    std::vector<Permutation> elements_;  // sorted, full element list
};

}  // namespace trophom
