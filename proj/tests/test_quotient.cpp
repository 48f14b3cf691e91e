#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "trophom/errors.hpp"
#include "trophom/homology.hpp"
#include "trophom/quotient_complex.hpp"

using namespace trophom;

namespace {

PermGroup cyclic4(int degree) {
    return PermGroup::closure(degree, {Permutation::parse("(0 1 2 3)", degree)});
}

bool boundaries_compose_to_zero(const QuotientComplex& c) {
    for (std::size_t k = 1; k + 1 < c.boundaries.size(); ++k)
        if (!c.boundaries[k].multiplied_by(c.boundaries[k + 1]).is_zero()) return false;
    return true;
}

long euler_from_counts(const std::vector<std::size_t>& counts) {
    long chi = 0;
    for (std::size_t k = 0; k < counts.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(counts[k]);
    return chi;
}

long euler_from_homology(const QuotientHomology& h) {
    long chi = 1;  // reduced degree 0 hides one Z
    for (std::size_t k = 0; k < h.reduced.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(h.reduced[k].rank);
    return chi;
}

Permutation random_permutation(int degree, std::mt19937& rng) {
    std::vector<std::uint8_t> img(static_cast<std::size_t>(degree));
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation(std::move(img));
}

}  // namespace

TEST_CASE("subdivided triangle boundary is a hexagon") {
    QuotientComplex c = build_quotient(2, PermGroup::trivial(3));
    CHECK(c.orbit_counts() == std::vector<std::size_t>{6, 6});
    CHECK(euler_from_counts(c.orbit_counts()) == 0);
    CHECK(boundaries_compose_to_zero(c));

    QuotientHomology h = quotient_homology(c);
    CHECK(h.reduced[0] == HomologyGroup{});
    CHECK(h.reduced[1] == HomologyGroup{1, {}});
}

TEST_CASE("boundary of the 3-simplex mod a 4-cycle is the projective plane") {
    QuotientComplex c = build_quotient(3, cyclic4(4));
    CHECK(euler_from_counts(c.orbit_counts()) == 1);  // chi(RP^2)
    CHECK(boundaries_compose_to_zero(c));

    QuotientHomology h = quotient_homology(c);
    CHECK(h.reduced[0] == HomologyGroup{});
    CHECK(h.reduced[1] == HomologyGroup{0, {Int(2)}});
    CHECK(h.reduced[2] == HomologyGroup{});
    CHECK(euler_from_homology(h) == 1);
}

TEST_CASE("4-cycle fixing a vertex gives the suspension of RP^2") {
    std::vector<HomologyGroup> h =
        reduced_sphere_quotient_homology(4, cyclic4(5), {.use_shortcut = false});
    CHECK(h[0] == HomologyGroup{});
    CHECK(h[1] == HomologyGroup{});
    CHECK(h[2] == HomologyGroup{0, {Int(2)}});
    CHECK(h[3] == HomologyGroup{});
}

TEST_CASE("free involution of six vertices gives a double suspension of RP^2") {
    PermGroup g = PermGroup::closure(6, {Permutation::parse("(0 1)(2 3)(4 5)", 6)});
    std::vector<HomologyGroup> h = reduced_sphere_quotient_homology(6 - 1, g);
    for (std::size_t k = 0; k < h.size(); ++k) {
        if (k == 3)
            CHECK(h[k] == HomologyGroup{0, {Int(2)}});
        else
            CHECK(h[k] == HomologyGroup{});
    }
}

TEST_CASE("trivial group recovers spheres") {
    for (int p = 1; p <= 4; ++p) {
        std::vector<HomologyGroup> h = reduced_sphere_quotient_homology(p, PermGroup::trivial(p + 1));
        for (int k = 0; k < p; ++k) {
            if (k == p - 1)
                CHECK(h[static_cast<std::size_t>(k)] == HomologyGroup{1, {}});
            else
                CHECK(h[static_cast<std::size_t>(k)] == HomologyGroup{});
        }
    }
}

TEST_CASE("groups with a reflection give contractible quotients") {
    std::mt19937 rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        int p = 2 + static_cast<int>(rng() % 3);
        std::vector<Permutation> gens{random_permutation(p + 1, rng)};
        // force a transposition into the group
        int a = static_cast<int>(rng() % (p + 1));
        int b = (a + 1 + static_cast<int>(rng() % p)) % (p + 1);
        std::vector<std::uint8_t> img(static_cast<std::size_t>(p + 1));
        std::iota(img.begin(), img.end(), 0);
        std::swap(img[static_cast<std::size_t>(a)], img[static_cast<std::size_t>(b)]);
        gens.emplace_back(std::move(img));

        PermGroup g = PermGroup::closure(p + 1, gens);
        REQUIRE(g.contains_transposition());
        // full computation, shortcut bypassed
        std::vector<HomologyGroup> h =
            reduced_sphere_quotient_homology(p, g, {.use_shortcut = false});
        for (const HomologyGroup& grp : h) CHECK(grp.is_zero());
    }
}

TEST_CASE("redundant identity generators change nothing") {
    PermGroup a = cyclic4(4);
    PermGroup b = PermGroup::closure(
        4, {Permutation::parse("(0 1 2 3)", 4), Permutation::identity(4)});
    QuotientComplex ca = build_quotient(3, a);
    QuotientComplex cb = build_quotient(3, b);
    CHECK(ca.orbit_counts() == cb.orbit_counts());
    CHECK(quotient_homology(ca).reduced == quotient_homology(cb).reduced);
}

TEST_CASE("subdivision levels agree on small cases") {
    std::vector<std::pair<int, PermGroup>> cases;
    cases.emplace_back(2, PermGroup::trivial(3));
    cases.emplace_back(3, cyclic4(4));
    cases.emplace_back(3, PermGroup::closure(4, {Permutation::parse("(0 1)", 4)}));
    cases.emplace_back(4, cyclic4(5));
    for (const auto& [p, group] : cases) {
        std::vector<HomologyGroup> checked = level_checked_sphere_quotient_homology(p, group);
        std::vector<HomologyGroup> level1 =
            reduced_sphere_quotient_homology(p, group, {.use_shortcut = false});
        CHECK(checked == level1);
    }
}

TEST_CASE("euler characteristic is consistent between counts and ranks") {
    std::mt19937 rng(59);
    for (int trial = 0; trial < 8; ++trial) {
        int p = 2 + static_cast<int>(rng() % 3);
        std::vector<Permutation> gens;
        for (unsigned k = rng() % 2; k > 0; --k) gens.push_back(random_permutation(p + 1, rng));
        PermGroup g = PermGroup::closure(p + 1, gens);
        QuotientComplex c = build_quotient(p, g);
        QuotientHomology h = quotient_homology(c);
        // torsion does not contribute to chi
        CHECK(euler_from_counts(h.orbit_counts) == euler_from_homology(h));
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(build_quotient(0, PermGroup::trivial(1)), InvalidInput);
    CHECK_THROWS_AS(build_quotient(3, PermGroup::trivial(3)), InvalidInput);
    CHECK_THROWS_AS(build_quotient(3, PermGroup::trivial(4), 3), InvalidInput);
}
