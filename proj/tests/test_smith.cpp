#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "trophom/smith.hpp"

using namespace trophom;

namespace {

SparseIntMatrix dense(std::size_t rows, std::size_t cols,
                      const std::vector<std::vector<long>>& vals) {
    SparseIntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.add(r, c, Int(vals[r][c]));
    return m;
}

Int determinant(const std::vector<std::vector<Int>>& a) {
    std::size_t n = a.size();
    if (n == 1) return a[0][0];
    Int det = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        std::vector<std::vector<Int>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Int> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[r][c]);
            minor.push_back(std::move(row));
        }
        Int term = a[0][j] * determinant(minor);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

// Independent oracle: d_k = gcd(k-minors) / gcd((k-1)-minors).
std::vector<Int> minor_gcd_diagonal(const SparseIntMatrix& m) {
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols, Int(0)));
    m.for_each([&](std::size_t r, std::size_t c, const Int& v) { a[r][c] = v; });

    std::size_t n = std::min(rows, cols);
    std::vector<Int> gcds(n + 1, Int(0));
    gcds[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Int g = 0;
        std::vector<std::size_t> rsel(k), csel(k);
        std::function<void(std::size_t, std::size_t)> pick_cols = [&](std::size_t idx,
                                                                      std::size_t start) {
            if (idx == k) {
                std::vector<std::vector<Int>> sub(k, std::vector<Int>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub[i][j] = a[rsel[i]][csel[j]];
                g = gcd(g, determinant(sub));
                return;
            }
            for (std::size_t c = start; c < cols; ++c) {
                csel[idx] = c;
                pick_cols(idx + 1, c + 1);
            }
        };
        std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t idx,
                                                                      std::size_t start) {
            if (idx == k) {
                pick_cols(0, 0);
                return;
            }
            for (std::size_t r = start; r < rows; ++r) {
                rsel[idx] = r;
                pick_rows(idx + 1, r + 1);
            }
        };
        pick_rows(0, 0);
        gcds[k] = abs(g);
    }

    std::vector<Int> diag(n, Int(0));
    for (std::size_t k = 1; k <= n; ++k) {
        if (gcds[k] == 0) break;
        diag[k - 1] = gcds[k] / gcds[k - 1];
    }
    return diag;
}

}  // namespace

TEST_CASE("identity matrix") {
    CHECK(smith_diagonal(dense(3, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) ==
          std::vector<Int>{1, 1, 1});
}

TEST_CASE("2x2 with torsion") {
    CHECK(smith_diagonal(dense(2, 2, {{2, 4}, {6, 8}})) == std::vector<Int>{2, 4});
}

TEST_CASE("zero and empty matrices") {
    CHECK(smith_diagonal(SparseIntMatrix(2, 3)) == std::vector<Int>{0, 0});
    CHECK(smith_diagonal(SparseIntMatrix(0, 0)).empty());
    CHECK(smith_diagonal(SparseIntMatrix(0, 5)).empty());
    CHECK(smith_diagonal(SparseIntMatrix(5, 0)).empty());
}

TEST_CASE("divisibility fixup across diagonal blocks") {
    CHECK(smith_diagonal(dense(2, 2, {{2, 0}, {0, 3}})) == std::vector<Int>{1, 6});
    CHECK(smith_diagonal(dense(1, 1, {{-7}})) == std::vector<Int>{7});
    CHECK(smith_diagonal(dense(3, 3, {{4, 0, 0}, {0, 6, 0}, {0, 0, 10}})) ==
          std::vector<Int>{2, 2, 60});
}

TEST_CASE("agrees with the minor-gcd oracle on random small matrices") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t rows = 1 + rng() % 6;
        std::size_t cols = 1 + rng() % 6;
        SparseIntMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) {
                if (rng() % 3 == 0) continue;  // keep it sparse-ish
                long v = static_cast<long>(rng() % 19) - 9;
                m.add(r, c, Int(v));
            }
        std::vector<Int> got = smith_diagonal(m);
        std::vector<Int> want = minor_gcd_diagonal(m);
        REQUIRE(got == want);
        // divisibility chain
        for (std::size_t i = 0; i + 1 < got.size(); ++i) {
            if (got[i + 1] == 0) continue;
            REQUIRE(got[i] != 0);
            CHECK(got[i + 1] % got[i] == 0);
        }
    }
}

TEST_CASE("handles entries that overflow int64 during elimination") {
    // A dense matrix of large coprime-ish values exercises the mpz path.
    SparseIntMatrix m(3, 3);
    Int big("4611686018427387904");  // 2^62
    m.add(0, 0, big);
    m.add(0, 1, big - 1);
    m.add(1, 0, big - 3);
    m.add(1, 1, big + 5);
    m.add(2, 2, Int(3));
    std::vector<Int> diag = smith_diagonal(m);
    CHECK(diag.size() == 3);
    CHECK(diag == minor_gcd_diagonal(m));
}
