#include "trophom/sparse_matrix.hpp"

#include <algorithm>

#include "trophom/errors.hpp"

namespace trophom {

void SparseIntMatrix::check_index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw InvalidInput("matrix index out of range");
    if (rows_ >= (std::size_t{1} << 32) || cols_ >= (std::size_t{1} << 32))
        throw InvalidInput("matrix dimension too large");
}

void SparseIntMatrix::add(std::size_t r, std::size_t c, const Int& v) {
    if (v == 0) return;
    check_index(r, c);
    auto [it, inserted] = entries_.try_emplace(key(r, c), v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0) entries_.erase(it);
    }
}

void SparseIntMatrix::set(std::size_t r, std::size_t c, const Int& v) {
    check_index(r, c);
    if (v == 0)
        entries_.erase(key(r, c));
    else
        entries_[key(r, c)] = v;
}

Int SparseIntMatrix::get(std::size_t r, std::size_t c) const {
    auto it = entries_.find(key(r, c));
    return it == entries_.end() ? Int(0) : it->second;
}

std::vector<std::tuple<std::size_t, std::size_t, Int>> SparseIntMatrix::triplets() const {
    std::vector<std::tuple<std::size_t, std::size_t, Int>> out;
    out.reserve(entries_.size());
    for_each([&](std::size_t r, std::size_t c, const Int& v) { out.emplace_back(r, c, v); });
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    return out;
}

SparseIntMatrix SparseIntMatrix::multiplied_by(const SparseIntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw InvalidInput("matrix product dimension mismatch");
    // Group lhs entries by column so each rhs entry is expanded once.
    std::vector<std::vector<std::pair<std::size_t, const Int*>>> by_col(cols_);
    for_each([&](std::size_t r, std::size_t c, const Int& v) { by_col[c].emplace_back(r, &v); });

    SparseIntMatrix out(rows_, rhs.cols_);
    rhs.for_each([&](std::size_t i, std::size_t j, const Int& v) {
        for (const auto& [r, lv] : by_col[i]) out.add(r, j, (*lv) * v);
    });
    return out;
}

}  // namespace trophom
