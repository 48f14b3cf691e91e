#include "trophom/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "trophom/errors.hpp"

namespace trophom {

PermGroup PermGroup::closure(int degree, std::vector<Permutation> generators, std::size_t cap) {
    if (degree < 0) throw InvalidInput("negative group degree");
    for (const Permutation& g : generators)
        if (g.degree() != degree) throw InvalidInput("generator degree mismatch");

    std::set<Permutation> seen;
    std::deque<Permutation> todo;
    Permutation id = Permutation::identity(degree);
    seen.insert(id);
    todo.push_back(id);

    while (!todo.empty()) {
        Permutation current = std::move(todo.front());
        todo.pop_front();
        for (const Permutation& g : generators) {
            Permutation next = current.after(g);
            if (seen.insert(next).second) {
                if (seen.size() > cap) throw CapExceeded("group order cap exceeded");
                todo.push_back(std::move(next));
            }
        }
    }

    PermGroup result;
    result.degree_ = degree;
    result.generators_ = std::move(generators);
    result.elements_.assign(seen.begin(), seen.end());
    return result;
}

PermGroup PermGroup::trivial(int degree) {
    return closure(degree, {});
}

bool PermGroup::contains_transposition() const {
    for (const Permutation& g : elements_)
        if (g.moved_points() == 2) return true;
    return false;
}

}  // namespace trophom
