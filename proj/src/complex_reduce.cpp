// Unit-pair reduction of a whole chain complex.
//
// Cancelling cells sigma (dim k-1) and tau (dim k) with unit incidence u:
//   d_k[y,x] -= d_k[sigma,x] * d_k[y,tau] / u   (rank-1 Gaussian update),
// then row tau of d_{k+1} and column sigma of d_{k-1} are deleted outright;
// d d = 0 makes both deletions lossless. The quotient by the acyclic
// subcomplex spanned by (tau, d tau) leaves homology unchanged.

#include "trophom/complex_reduce.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "trophom/errors.hpp"

namespace trophom {

namespace {

struct OverflowSignal {};

template <typename T>
T from_int(const Int& v);

template <>
long long from_int<long long>(const Int& v) {
    if (!v.fits_slong_p()) throw OverflowSignal{};
    return static_cast<long long>(v.get_si());
}

template <>
Int from_int<Int>(const Int& v) {
    return v;
}

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowSignal{};
    return r;
}
inline long long checked_sub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowSignal{};
    return r;
}
inline Int checked_mul(const Int& a, const Int& b) { return a * b; }
inline Int checked_sub(const Int& a, const Int& b) { return a - b; }

inline Int to_int(long long v) { return Int(static_cast<long>(v)); }
inline const Int& to_int(const Int& v) { return v; }

template <typename T>
inline bool is_unit(const T& v) {
    return v == 1 || v == -1;
}

template <typename T>
class Reducer {
public:
    Reducer(const std::vector<SparseIntMatrix>& boundaries, const std::vector<std::size_t>& counts,
            const ProgressFn& progress)
        : dims_(counts.size()), progress_(progress) {
        alive_.resize(dims_);
        for (std::size_t d = 0; d < dims_; ++d) alive_[d].assign(counts[d], true);
        rows_.resize(dims_);
        col_rows_.resize(dims_);
        col_count_.resize(dims_);
        for (std::size_t k = 1; k < dims_; ++k) {
            rows_[k].resize(counts[k - 1]);
            col_rows_[k].resize(counts[k]);
            col_count_[k].assign(counts[k], 0);
            boundaries[k].for_each([&](std::size_t r, std::size_t c, const Int& v) {
                rows_[k][r].emplace_back(static_cast<std::uint32_t>(c), from_int<T>(v));
            });
            for (std::size_t r = 0; r < counts[k - 1]; ++r) {
                auto& row = rows_[k][r];
                std::sort(row.begin(), row.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                for (const auto& [c, v] : row) {
                    col_rows_[k][c].push_back(static_cast<std::uint32_t>(r));
                    ++col_count_[k][c];
                    if (is_unit(v)) push_pair(k, r, c);
                }
            }
        }
    }

    ReducedComplex run() {
        std::size_t cancelled = 0;
        while (!pairs_.empty()) {
            Candidate cand = pairs_.top();
            pairs_.pop();
            if (!alive_[cand.k - 1][cand.row] || !alive_[cand.k][cand.col]) continue;
            const T* v = find_entry(cand.k, cand.row, cand.col);
            if (v == nullptr || !is_unit(*v)) continue;
            std::uint64_t now = cost_of(cand.k, cand.row, cand.col);
            if (now > cand.cost && !pairs_.empty() && pairs_.top().cost < now) {
                pairs_.push({now, cand.k, cand.row, cand.col});
                continue;
            }
            cancel_pair(cand.k, cand.row, cand.col, *v);
            ++cancelled;
            if (progress_ && cancelled % 65536 == 0) {
                std::ostringstream msg;
                msg << "  reduce: " << cancelled << " pairs cancelled";
                progress_(msg.str());
            }
        }

        ReducedComplex out;
        std::vector<std::vector<std::uint32_t>> index(dims_);
        out.counts.resize(dims_);
        for (std::size_t d = 0; d < dims_; ++d) {
            index[d].assign(alive_[d].size(), 0);
            std::uint32_t next = 0;
            for (std::size_t i = 0; i < alive_[d].size(); ++i)
                if (alive_[d][i]) index[d][i] = next++;
            out.counts[d] = next;
        }
        out.boundaries.emplace_back(0, out.counts[0]);
        for (std::size_t k = 1; k < dims_; ++k) {
            SparseIntMatrix m(out.counts[k - 1], out.counts[k]);
            for (std::size_t r = 0; r < rows_[k].size(); ++r) {
                if (!alive_[k - 1][r]) continue;
                for (const auto& [c, v] : rows_[k][r])
                    m.set(index[k - 1][r], index[k][c], to_int(v));
            }
            out.boundaries.push_back(std::move(m));
        }
        if (progress_) {
            std::ostringstream msg;
            msg << "  reduce: " << cancelled << " pairs cancelled, residual cells";
            for (std::size_t d = 0; d < dims_; ++d) msg << ' ' << out.counts[d];
            progress_(msg.str());
        }
        return out;
    }

private:
    using Entry = std::pair<std::uint32_t, T>;
    struct Candidate {
        std::uint64_t cost;
        std::size_t k;
        std::uint32_t row;
        std::uint32_t col;
        bool operator>(const Candidate& o) const {
            return std::tie(cost, k, row, col) > std::tie(o.cost, o.k, o.row, o.col);
        }
    };

    std::size_t dims_;
    ProgressFn progress_;
    std::vector<std::vector<bool>> alive_;
    // rows_[k]: rows of d_k indexed by (k-1)-cells; cols indexed by k-cells.
    std::vector<std::vector<std::vector<Entry>>> rows_;
    std::vector<std::vector<std::vector<std::uint32_t>>> col_rows_;
    std::vector<std::vector<std::uint32_t>> col_count_;
    std::priority_queue<Candidate, std::vector<Candidate>, std::greater<Candidate>> pairs_;

    void push_pair(std::size_t k, std::size_t r, std::size_t c) {
        pairs_.push({cost_of(k, r, c), k, static_cast<std::uint32_t>(r),
                     static_cast<std::uint32_t>(c)});
    }

    std::uint64_t cost_of(std::size_t k, std::size_t r, std::size_t c) const {
        return static_cast<std::uint64_t>(rows_[k][r].size() - 1) *
               static_cast<std::uint64_t>(col_count_[k][c] - 1);
    }

    const T* find_entry(std::size_t k, std::size_t r, std::size_t c) const {
        const auto& row = rows_[k][r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::size_t col) { return e.first < col; });
        if (it == row.end() || it->first != c) return nullptr;
        return &it->second;
    }

    void row_axpy(std::size_t k, std::size_t target, std::size_t source, const T& mult) {
        const auto& src = rows_[k][source];
        auto& dst = rows_[k][target];
        std::vector<Entry> merged;
        merged.reserve(dst.size() + src.size());
        std::size_t i = 0, j = 0;
        while (i < dst.size() || j < src.size()) {
            if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
                merged.push_back(std::move(dst[i]));
                ++i;
            } else if (i == dst.size() || src[j].first < dst[i].first) {
                T v = checked_sub(T(0), checked_mul(mult, src[j].second));
                if (!(v == 0)) {
                    merged.emplace_back(src[j].first, std::move(v));
                    col_rows_[k][src[j].first].push_back(static_cast<std::uint32_t>(target));
                    ++col_count_[k][src[j].first];
                    if (is_unit(merged.back().second)) push_pair(k, target, src[j].first);
                }
                ++j;
            } else {
                T v = checked_sub(dst[i].second, checked_mul(mult, src[j].second));
                if (v == 0) {
                    --col_count_[k][dst[i].first];
                } else {
                    bool was_unit = is_unit(dst[i].second);
                    merged.emplace_back(dst[i].first, std::move(v));
                    if (!was_unit && is_unit(merged.back().second))
                        push_pair(k, target, dst[i].first);
                }
                ++i;
                ++j;
            }
        }
        dst = std::move(merged);
    }

    void delete_row(std::size_t k, std::size_t r) {
        for (const auto& [c, v] : rows_[k][r]) --col_count_[k][c];
        rows_[k][r].clear();
        rows_[k][r].shrink_to_fit();
    }

    void delete_col(std::size_t k, std::size_t c) {
        for (std::uint32_t r : col_rows_[k][c]) {
            auto& row = rows_[k][r];
            auto it = std::lower_bound(row.begin(), row.end(), c,
                                       [](const Entry& e, std::size_t col) { return e.first < col; });
            if (it != row.end() && it->first == c) row.erase(it);
        }
        col_rows_[k][c].clear();
        col_rows_[k][c].shrink_to_fit();
        col_count_[k][c] = 0;
    }

    // sigma = row (dim k-1), tau = col (dim k), pivot u.
    void cancel_pair(std::size_t k, std::size_t sigma, std::size_t tau, T u) {
        auto& list = col_rows_[k][tau];
        std::size_t w = 0;
        for (std::size_t idx = 0; idx < list.size(); ++idx) {
            std::uint32_t r = list[idx];
            if (!alive_[k - 1][r] || find_entry(k, r, tau) == nullptr) continue;
            list[w++] = r;
        }
        list.resize(w);
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());

        for (std::uint32_t y : std::vector<std::uint32_t>(list.begin(), list.end())) {
            if (y == sigma) continue;
            const T* b = find_entry(k, y, tau);
            if (b == nullptr) continue;
            row_axpy(k, y, sigma, checked_mul(*b, u));  // u*u == 1
        }

        alive_[k - 1][sigma] = false;
        alive_[k][tau] = false;
        delete_row(k, sigma);
        delete_col(k, tau);
        if (k + 1 < dims_) delete_row(k + 1, tau);
        if (k >= 2) delete_col(k - 1, sigma);
    }
};

}  // namespace

ReducedComplex reduce_complex(const std::vector<SparseIntMatrix>& boundaries,
                              const std::vector<std::size_t>& counts,
                              const ProgressFn& progress) {
    if (boundaries.size() != counts.size())
        throw InvalidInput("boundary/count size mismatch in reduce_complex");
    for (std::size_t k = 1; k < counts.size(); ++k)
        if (boundaries[k].rows() != counts[k - 1] || boundaries[k].cols() != counts[k])
            throw InvalidInput("boundary shape mismatch in reduce_complex");
    try {
        return Reducer<long long>(boundaries, counts, progress).run();
    } catch (const OverflowSignal&) {
        if (progress) progress("  reduce: int64 overflow, retrying with arbitrary precision");
        return Reducer<Int>(boundaries, counts, progress).run();
    }
}

}  // namespace trophom
