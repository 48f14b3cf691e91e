// Sparse Smith normal form over Z.
//
// Phase 1 repeatedly eliminates on +-1 pivots chosen by Markowitz cost
// (min (row_nnz-1)*(col_nnz-1)); boundary matrices are +-1-valued, so this
// phase usually consumes the whole matrix without coefficient growth.
// Phase 2 handles the residual block with general pivoting and quotient
// steps. The diagonal is normalized into a divisibility chain at the end.

#include "trophom/smith.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <sstream>

namespace trophom {

namespace {

struct OverflowSignal {};

// Arithmetic shims so the elimination can run on checked int64 first and on
// mpz_class only when needed.
template <typename T>
struct Arith;

template <>
struct Arith<long long> {
    static long long from(const Int& v) {
        if (!v.fits_slong_p()) throw OverflowSignal{};
        return static_cast<long long>(v.get_si());
    }
    static Int to_int(long long v) { return Int(static_cast<long>(v)); }
    static long long mul(long long a, long long b) {
        long long r;
        if (__builtin_mul_overflow(a, b, &r)) throw OverflowSignal{};
        return r;
    }
    static long long sub(long long a, long long b) {
        long long r;
        if (__builtin_sub_overflow(a, b, &r)) throw OverflowSignal{};
        return r;
    }
    static long long quot(long long a, long long b) { return a / b; }
    static bool is_unit(long long v) { return v == 1 || v == -1; }
    static long long abs(long long v) {
        if (v == std::numeric_limits<long long>::min()) throw OverflowSignal{};
        return v < 0 ? -v : v;
    }
};

template <>
struct Arith<Int> {
    static Int from(const Int& v) { return v; }
    static Int to_int(const Int& v) { return v; }
    static Int mul(const Int& a, const Int& b) { return a * b; }
    static Int sub(const Int& a, const Int& b) { return a - b; }
    static Int quot(const Int& a, const Int& b) {
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
    static bool is_unit(const Int& v) { return v == 1 || v == -1; }
    static Int abs(const Int& v) { return ::abs(v); }
};

template <typename T>
class Eliminator {
public:
    Eliminator(const SparseIntMatrix& m, const ProgressFn& progress)
        : nrows_(m.rows()), ncols_(m.cols()), progress_(progress) {
        rows_.resize(nrows_);
        col_rows_.resize(ncols_);
        col_count_.assign(ncols_, 0);
        row_alive_.assign(nrows_, true);
        col_alive_.assign(ncols_, true);
        m.for_each([&](std::size_t r, std::size_t c, const Int& v) {
            rows_[r].emplace_back(static_cast<std::uint32_t>(c), Arith<T>::from(v));
        });
        for (std::size_t r = 0; r < nrows_; ++r) {
            std::sort(rows_[r].begin(), rows_[r].end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            for (const auto& [c, v] : rows_[r]) {
                col_rows_[c].push_back(static_cast<std::uint32_t>(r));
                ++col_count_[c];
                if (Arith<T>::is_unit(v)) push_unit(r, c);
            }
        }
    }

    std::vector<Int> run() {
        std::size_t total = std::min(nrows_, ncols_);
        std::size_t reported = 0;
        while (true) {
            if (!unit_phase_step()) {
                if (!general_phase_step()) break;
            }
            if (progress_ && factors_.size() >= reported + 16384) {
                reported = factors_.size();
                std::ostringstream msg;
                msg << "  snf pivots " << reported << "/" << total;
                progress_(msg.str());
            }
        }
        std::vector<Int> diag = factors_;
        diag.resize(total, Int(0));
        normalize_chain(diag);
        return diag;
    }

private:
    using Entry = std::pair<std::uint32_t, T>;
    struct Candidate {
        std::uint64_t cost;
        std::uint32_t row;
        std::uint32_t col;
        bool operator>(const Candidate& o) const { return cost > o.cost; }
    };

    std::size_t nrows_, ncols_;
    ProgressFn progress_;
    std::vector<std::vector<Entry>> rows_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::vector<std::uint32_t> col_count_;
    std::vector<bool> row_alive_, col_alive_;
    std::priority_queue<Candidate, std::vector<Candidate>, std::greater<Candidate>> units_;
    std::vector<Int> factors_;

    void push_unit(std::size_t r, std::size_t c) {
        units_.push({cost_of(r, c), static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c)});
    }

    std::uint64_t cost_of(std::size_t r, std::size_t c) const {
        return static_cast<std::uint64_t>(rows_[r].size() - 1) *
               static_cast<std::uint64_t>(col_count_[c] - 1);
    }

    const T* find_entry(std::size_t r, std::size_t c) const {
        const auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::size_t col) { return e.first < col; });
        if (it == row.end() || it->first != c) return nullptr;
        return &it->second;
    }

    // row[target] -= mult * row[source]; updates column structures.
    void row_axpy(std::size_t target, std::size_t source, const T& mult) {
        const auto& src = rows_[source];
        auto& dst = rows_[target];
        std::vector<Entry> merged;
        merged.reserve(dst.size() + src.size());
        std::size_t i = 0, j = 0;
        while (i < dst.size() || j < src.size()) {
            if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
                merged.push_back(std::move(dst[i]));
                ++i;
            } else if (i == dst.size() || src[j].first < dst[i].first) {
                T v = Arith<T>::sub(T(0), Arith<T>::mul(mult, src[j].second));
                if (!(v == 0)) {
                    merged.emplace_back(src[j].first, std::move(v));
                    col_rows_[src[j].first].push_back(static_cast<std::uint32_t>(target));
                    ++col_count_[src[j].first];
                    if (Arith<T>::is_unit(merged.back().second)) push_unit(target, src[j].first);
                }
                ++j;
            } else {
                T v = Arith<T>::sub(dst[i].second, Arith<T>::mul(mult, src[j].second));
                if (v == 0) {
                    --col_count_[dst[i].first];
                } else {
                    bool was_unit = Arith<T>::is_unit(dst[i].second);
                    merged.emplace_back(dst[i].first, std::move(v));
                    if (!was_unit && Arith<T>::is_unit(merged.back().second))
                        push_unit(target, dst[i].first);
                }
                ++i;
                ++j;
            }
        }
        dst = std::move(merged);
    }

    // Collects the live rows of column c (deduplicated, excluding `except`).
    void live_column_rows(std::size_t c, std::size_t except, std::vector<std::uint32_t>& out) {
        out.clear();
        auto& list = col_rows_[c];
        std::size_t w = 0;
        for (std::size_t k = 0; k < list.size(); ++k) {
            std::uint32_t r = list[k];
            if (!row_alive_[r] || find_entry(r, c) == nullptr) continue;
            list[w++] = r;
        }
        list.resize(w);
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        for (std::uint32_t r : list)
            if (r != except) out.push_back(r);
    }

    void retire(std::size_t r, std::size_t c) {
        for (const auto& [col, v] : rows_[r]) --col_count_[col];
        rows_[r].clear();
        rows_[r].shrink_to_fit();
        row_alive_[r] = false;
        col_alive_[c] = false;
    }

    // One +-1 pivot elimination; false when no unit entry remains.
    bool unit_phase_step() {
        while (!units_.empty()) {
            Candidate cand = units_.top();
            units_.pop();
            if (!row_alive_[cand.row] || !col_alive_[cand.col]) continue;
            const T* v = find_entry(cand.row, cand.col);
            if (v == nullptr || !Arith<T>::is_unit(*v)) continue;
            std::uint64_t now = cost_of(cand.row, cand.col);
            if (now > cand.cost && !units_.empty() && units_.top().cost < now) {
                units_.push({now, cand.row, cand.col});
                continue;
            }
            eliminate_unit(cand.row, cand.col, *v);
            return true;
        }
        return false;
    }

    void eliminate_unit(std::size_t r, std::size_t c, T pivot) {
        std::vector<std::uint32_t> targets;
        live_column_rows(c, r, targets);
        for (std::uint32_t t : targets) {
            const T* a = find_entry(t, c);
            if (a == nullptr) continue;
            row_axpy(t, r, Arith<T>::mul(*a, pivot));  // pivot^2 == 1
        }
        factors_.push_back(Int(1));
        retire(r, c);
    }

    // One general pivot on the residual block; false when the matrix is empty.
    bool general_phase_step() {
        std::size_t pr = nrows_, pc = 0;
        const T* pv = nullptr;
        for (std::size_t r = 0; r < nrows_; ++r) {
            if (!row_alive_[r]) continue;
            for (const auto& [c, v] : rows_[r]) {
                if (pv == nullptr || Arith<T>::abs(v) < Arith<T>::abs(*pv)) {
                    pr = r;
                    pc = c;
                    pv = &v;
                }
            }
        }
        if (pv == nullptr) return false;

        std::size_t r = pr, c = pc;
        T pivot = *pv;
        std::vector<std::uint32_t> targets;
        while (true) {
            // Clear the pivot column; a nonzero remainder becomes the new,
            // strictly smaller pivot.
            bool moved = false;
            live_column_rows(c, r, targets);
            for (std::uint32_t t : targets) {
                const T* a = find_entry(t, c);
                if (a == nullptr) continue;
                T q = Arith<T>::quot(*a, pivot);
                if (!(q == 0)) row_axpy(t, r, q);
                const T* rem = find_entry(t, c);
                if (rem != nullptr) {
                    r = t;
                    pivot = *rem;
                    moved = true;
                    break;
                }
            }
            if (moved) continue;

            // Column is clean; reduce the pivot row by column operations.
            // Since the pivot column is now a singleton, each operation only
            // touches row r.
            moved = false;
            auto& row = rows_[r];
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (row[k].first == c) continue;
                T q = Arith<T>::quot(row[k].second, pivot);
                T rem = Arith<T>::sub(row[k].second, Arith<T>::mul(q, pivot));
                std::uint32_t col2 = row[k].first;
                if (rem == 0) {
                    --col_count_[col2];
                    row.erase(row.begin() + static_cast<std::ptrdiff_t>(k));
                    --k;
                } else {
                    row[k].second = std::move(rem);
                    c = col2;
                    pivot = row[k].second;
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            break;
        }
        factors_.push_back(abs(Arith<T>::to_int(pivot)));
        retire(r, c);
        return true;
    }

    static void normalize_chain(std::vector<Int>& diag) {
        std::vector<Int*> live;
        for (Int& d : diag)
            if (d != 0) live.push_back(&d);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < live.size(); ++i) {
                for (std::size_t j = i + 1; j < live.size(); ++j) {
                    if (*live[j] % *live[i] == 0) continue;
                    Int g = gcd(*live[i], *live[j]);
                    Int l = (*live[i] / g) * (*live[j]);
                    *live[i] = g;
                    *live[j] = l;
                    changed = true;
                }
            }
        }
        std::vector<Int> nz;
        for (Int* d : live) nz.push_back(*d);
        std::sort(nz.begin(), nz.end());
        std::size_t k = 0;
        for (Int& d : diag)
            if (d != 0) d = nz[k++];
        std::stable_partition(diag.begin(), diag.end(), [](const Int& d) { return d != 0; });
    }
};

}  // namespace

std::vector<Int> smith_diagonal(const SparseIntMatrix& m, const ProgressFn& progress) {
    try {
        return Eliminator<long long>(m, progress).run();
    } catch (const OverflowSignal&) {
        if (progress) progress("  snf: int64 overflow, retrying with arbitrary precision");
        return Eliminator<Int>(m, progress).run();
    }
}

}  // namespace trophom
