#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace trophom {

// Exact integer type used everywhere torsion matters.
using Int = mpz_class;

// Progress callback for long-running builds and eliminations.
// Receives short human-readable lines; never written to stdout by the library.
using ProgressFn = std::function<void(const std::string&)>;

// Sparse matrix over Z with arbitrary-precision entries. Zero entries are
// never stored. Row/column counts are fixed at construction.
class SparseIntMatrix {
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return entries_.size(); }

    // Adds v to the (r, c) entry, erasing it if the sum is zero.
    void add(std::size_t r, std::size_t c, const Int& v);
    void set(std::size_t r, std::size_t c, const Int& v);

    Int get(std::size_t r, std::size_t c) const;

    // Entries as (row, col, value), sorted by (row, col).
    std::vector<std::tuple<std::size_t, std::size_t, Int>> triplets() const;

    SparseIntMatrix multiplied_by(const SparseIntMatrix& rhs) const;
    bool is_zero() const { return entries_.empty(); }

    friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (const auto& [key, value] : entries_)
            fn(static_cast<std::size_t>(key >> 32), static_cast<std::size_t>(key & 0xffffffffu), value);
    }

private:
    void check_index(std::size_t r, std::size_t c) const;
    static std::uint64_t key(std::size_t r, std::size_t c) {
        return (static_cast<std::uint64_t>(r) << 32) | static_cast<std::uint64_t>(c);
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::unordered_map<std::uint64_t, Int> entries_;
};

}  // namespace trophom
