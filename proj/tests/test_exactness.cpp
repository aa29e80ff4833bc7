#include <random>

#include "doctest.h"

#include "blockdec/exactness.hpp"
#include "blockdec/generator.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace blockdec;

namespace {

oracle::Square to_oracle(const SquareDiagram& sq) {
    return {oracle::from_matrix(sq.f1), oracle::from_matrix(sq.f2), oracle::from_matrix(sq.g1),
            oracle::from_matrix(sq.g2)};
}

std::vector<std::pair<GridPoint, GridPoint>> ordered_pairs(const Grid& g) {
    std::vector<std::pair<GridPoint, GridPoint>> out;
    for (const GridPoint& s : g.points())
        for (const GridPoint& t : g.points())
            if (s.leq(t)) out.emplace_back(s, t);
    return out;
}

bool strict(const GridPoint& s, const GridPoint& t) { return s[0] < t[0] && s[1] < t[1] && s[2] < t[2]; }

}  // namespace

TEST_CASE("square examples") {
    const Field f(7);
    SquareDiagram zero{Matrix(f, 0, 0), Matrix(f, 0, 0), Matrix(f, 0, 0), Matrix(f, 0, 0)};
    CHECK(square_exact(zero));
    CHECK(square_pullback_surjective(zero));
    CHECK(square_pushout_injective(zero));

    // A = 0, B = C = k, D = k^2 with the two coordinate inclusions.
    SquareDiagram incl{Matrix(f, 1, 0), Matrix(f, 1, 0), Matrix::from_rows(f, {{1}, {0}}),
                       Matrix::from_rows(f, {{0}, {1}})};
    CHECK(square_exact(incl));
    CHECK(square_pullback_surjective(incl));
    CHECK(square_pushout_injective(incl));

    // A = 0, B = C = D = k with identities: pullback is the diagonal, not hit.
    SquareDiagram diag{Matrix(f, 1, 0), Matrix(f, 1, 0), Matrix::identity(f, 1), Matrix::identity(f, 1)};
    CHECK_FALSE(square_exact(diag));
    CHECK_FALSE(square_pullback_surjective(diag));
    CHECK_FALSE(square_pushout_injective(diag));

    // The pullback itself is exact.
    SquareDiagram pb{Matrix::identity(f, 1), Matrix::identity(f, 1), Matrix::identity(f, 1), Matrix::identity(f, 1)};
    CHECK(square_exact(pb));

    SquareDiagram broken{Matrix::identity(f, 1), Matrix::identity(f, 1), Matrix::identity(f, 1),
                         Matrix::from_rows(f, {{2}})};
    CHECK_FALSE(broken.commutes());
    CHECK_THROWS_AS(square_exact(broken), std::invalid_argument);
    CHECK_THROWS_AS(square_pullback_surjective(broken), std::invalid_argument);
    CHECK_THROWS_AS(square_pushout_injective(broken), std::invalid_argument);
}

TEST_CASE("square predicates agree with enumeration") {
    std::size_t exact = 0, inexact = 0;
    for (Scalar p : {2u, 3u}) {
        const Field f(p);
        std::mt19937_64 rng(40 + p);
        for (int trial = 0; trial < 150; ++trial) {
            const SquareDiagram sq = props::random_commuting_square(f, rng, 2);
            REQUIRE(sq.commutes());
            const oracle::Square o = to_oracle(sq);
            const bool truth = oracle::square_exact(o, p);
            CHECK(square_exact(sq) == truth);
            CHECK(square_pullback_surjective(sq) == truth);
            CHECK(square_pushout_injective(sq) == oracle::square_pushout_injective(o, p));
            CHECK(oracle::square_pushout_injective(o, p) == truth);
            (truth ? exact : inexact) += 1;
        }
    }
    CHECK(exact > 20);
    CHECK(inexact > 20);
}

TEST_CASE("counterexample cube") {
    const GridModule m = paper_example(Field(32003));
    REQUIRE(validate(m).ok());
    const CubeDiagram cube = CubeDiagram::from_module(m, {{1, 1, 1}}, {{2, 2, 2}});
    CHECK(cube.commutes());
    CHECK(cube_psi_surjective(cube));
    const RankCheck phi = phi_rank_check(cube);
    CHECK(phi.found == 0);
    CHECK(phi.required == 1);
    CHECK_FALSE(cube_phi_injective(cube));

    // The face with spaces 0, k, k, k^2 at the top.
    const SquareDiagram face = SquareDiagram::from_module(m, {{1, 1, 2}}, {{2, 2, 2}}, 0, 1);
    CHECK(face.dim_a() == 0);
    CHECK(face.dim_d() == 2);
    CHECK(square_exact(face));
    CHECK(square_pullback_surjective(face));
    CHECK(square_pushout_injective(face));
}

TEST_CASE("counterexample report") {
    for (Scalar p : {2u, 3u, 32003u}) {
        const GridModule m = paper_example(Field(p));
        const ExactnessReport r = check_strong_exactness(m);
        CHECK_FALSE(r.overall);
        CHECK(r.slice_failures.empty());
        REQUIRE(r.cube_failures.size() == 1);
        CHECK(r.cube_failures[0].which == CubeFailure::Which::phi);
        CHECK(r.cube_failures[0].s == GridPoint{{1, 1, 1}});
        CHECK(r.cube_failures[0].t == GridPoint{{2, 2, 2}});
        CHECK(r.cube_failures[0].rank_found == 0);
        CHECK(r.cube_failures[0].rank_required == 1);
    }
}

TEST_CASE("cube checks agree with brute-force limits and colimits") {
    std::size_t psi_fail = 0, phi_fail = 0, cubes = 0;
    for (Scalar p : {2u, 3u}) {
        const Field f(p);
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const Grid g({2, 2, 2 + static_cast<int>(seed % 2)});
            const GridModule m = props::random_commuting_module(f, g, seed * 31 + p, p == 2 ? 2 : 1, 8);
            REQUIRE(validate(m).ok());
            const oracle::Module om = oracle::read(m);
            for (const auto& [s, t] : ordered_pairs(g)) {
                const CubeDiagram cube = CubeDiagram::from_module(m, s, t);
                const bool psi = oracle::cube_psi_surjective(om, s, t);
                const bool phi = oracle::cube_phi_injective(om, s, t);
                CAPTURE(s.to_string());
                CAPTURE(t.to_string());
                CHECK(cube_psi_surjective(cube) == psi);
                CHECK(cube_phi_injective(cube) == phi);
                if (!strict(s, t)) {
                    // A cube with a repeated coordinate is a square or an edge in disguise.
                    CHECK(psi);
                    CHECK(phi);
                }
                psi_fail += psi ? 0 : 1;
                phi_fail += phi ? 0 : 1;
                ++cubes;
            }
        }
    }
    MESSAGE("cubes compared: " << cubes << ", psi failures: " << psi_fail << ", phi failures: " << phi_fail);
    CHECK(psi_fail > 0);
    CHECK(phi_fail > 0);
}

TEST_CASE("counterexample against the oracle") {
    const GridModule m = paper_example(Field(3));
    const oracle::Module om = oracle::read(m);
    CHECK(oracle::cube_psi_surjective(om, {{1, 1, 1}}, {{2, 2, 2}}));
    CHECK_FALSE(oracle::cube_phi_injective(om, {{1, 1, 1}}, {{2, 2, 2}}));
}

TEST_CASE("report agrees with oracle over all pairs") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const Field f(2);
        const Grid g({2, 2, 3});
        const GridModule m = props::random_commuting_module(f, g, seed + 500, 2, 6);
        const oracle::Module om = oracle::read(m);
        bool truth = true;
        for (const auto& [s, t] : ordered_pairs(g)) {
            if (!strict(s, t)) continue;
            truth = truth && oracle::cube_psi_surjective(om, s, t) && oracle::cube_phi_injective(om, s, t);
        }
        for (std::size_t axis = 0; axis < kAxes; ++axis)
            for (const auto& [s, t] : ordered_pairs(g)) {
                if (s[axis] != t[axis]) continue;
                std::array<std::size_t, 2> free{};
                std::size_t n = 0;
                for (std::size_t i = 0; i < kAxes; ++i)
                    if (i != axis) free[n++] = i;
                if (s[free[0]] == t[free[0]] || s[free[1]] == t[free[1]]) continue;
                const SquareDiagram sq = SquareDiagram::from_module(m, s, t, free[0], free[1]);
                truth = truth && oracle::square_exact(to_oracle(sq), 2);
            }
        CHECK(check_strong_exactness(m).overall == truth);
    }
}

TEST_CASE("slices") {
    const Field f(5);
    const Grid g({3, 3, 1});
    Cuboid c = Cuboid::full(g);
    c.iv[0] = {0, 2};
    c.iv[1] = {0, 2};
    const GridModule m = block_module(f, g, c);
    CHECK(slice_strongly_exact(restrict_slice(m, 2, 1)).empty());
    // Bounded above on one axis and below on the other: not a block, not exact.
    c.iv[1] = {1, 3};
    CHECK_FALSE(slice_strongly_exact(restrict_slice(block_module(f, g, c), 2, 1)).empty());
    CHECK(slice_strongly_exact(restrict_slice(GridModule::zero(f, g), 2, 1)).empty());

    // Drop the bottom corner of a unit square: the diagonal of B+C is no longer hit.
    GridModule bad(f, Grid({2, 2, 1}), {0, 1, 1, 1});
    bad.set_step(0, {{1, 2, 1}}, Matrix::identity(f, 1));
    bad.set_step(1, {{2, 1, 1}}, Matrix::identity(f, 1));
    REQUIRE(validate(bad).ok());
    CHECK_FALSE(slice_strongly_exact(restrict_slice(bad, 2, 1)).empty());
}

TEST_CASE("block modules and block sums are strongly exact") {
    const Field f(32003);
    for (const Block& b : enumerate_blocks(Grid({3, 2, 3}))) {
        CHECK(check_strong_exactness(block_module(f, Grid({3, 2, 3}), b)).overall);
    }
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        std::mt19937_64 rng(seed);
        const Grid g = props::random_grid(rng, 4);
        const GridModule m = basis_twist(random_block_sum(f, g, seed, 3, 2).module, seed);
        CHECK(check_strong_exactness(m).overall);
    }
    CHECK(check_strong_exactness(GridModule::zero(f, Grid({2, 3, 4}))).overall);
}

TEST_CASE("direct sums and twists preserve the verdict") {
    const Field f(3);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Grid g({2, 2, 2});
        const GridModule a = props::random_commuting_module(f, g, seed, 2, 5);
        const GridModule b = seed % 3 == 0 ? paper_example(f) : random_block_sum(f, g, seed, 3, 2).module;
        const bool va = check_strong_exactness(a).overall;
        const bool vb = check_strong_exactness(b).overall;
        CHECK(check_strong_exactness(direct_sum(a, b)).overall == (va && vb));
        CHECK(check_strong_exactness(basis_twist(a, seed)).overall == va);
    }
}

TEST_CASE("unit-cells mode only reports genuine failures") {
    const Field f(2);
    std::size_t disagreements = 0, runs = 0;
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        std::mt19937_64 rng(seed);
        const Grid g = props::random_grid(rng, 3);
        const GridModule m = props::random_commuting_module(f, g, seed, 2, 6);
        const ExactnessReport fast = check_strong_exactness(m, CheckMode::unit_cells);
        const ExactnessReport full = check_strong_exactness(m);
        CHECK(fast.unit_cells_only);
        if (!fast.overall) CHECK_FALSE(full.overall);
        disagreements += fast.overall != full.overall ? 1 : 0;
        ++runs;
    }
    MESSAGE("unit-cells vs exhaustive disagreements: " << disagreements << " of " << runs);
}

TEST_CASE("invalid modules are refused") {
    const Field f(5);
    const Grid g({2, 2, 1});
    GridModule m = block_module(f, g, Cuboid::full(g));
    m.set_step(0, {{1, 1, 1}}, Matrix::from_rows(f, {{3}}));
    CHECK_THROWS_AS(check_strong_exactness(m), std::invalid_argument);
}
