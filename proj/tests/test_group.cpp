#include <catch2/catch_amalgamated.hpp>

#include "bloch/group.hpp"
#include "bloch/irreps.hpp"

using namespace bloch;

TEST_CASE("trivial group validates") {
    FiniteGroup g = validate_group({{0}});
    CHECK(g.order == 1);
    CHECK(g.identity_index == 0);
}

TEST_CASE("Z2 table validates") {
    FiniteGroup g = validate_group({{0, 1}, {1, 0}});
    CHECK(g.order == 2);
    CHECK(g.identity_index == 0);
    CHECK(g.inv(1) == 1);
}

TEST_CASE("S3 built from permutation composition is nonabelian") {
    FiniteGroup g = symmetric_group_3();
    CHECK(g.order == 6);
    bool noncommuting = false;
    for (int i = 0; i < 6 && !noncommuting; ++i)
        for (int j = 0; j < 6; ++j)
            if (g.mul(i, j) != g.mul(j, i)) { noncommuting = true; break; }
    CHECK(noncommuting);
}

TEST_CASE("non-groups are rejected with the violating structure named") {
    // Latin square but not associative (and no identity works consistently).
    CHECK_THROWS_AS(validate_group({{0, 1, 2}, {1, 2, 0}, {2, 1, 0}}), Error);
    CHECK_THROWS_AS(validate_group({{0, 0}, {1, 1}}), NotLatinSquare);
    CHECK_THROWS_AS(validate_group({{1, 0}, {0, 0}}), NotLatinSquare);
}

TEST_CASE("Z2 dual: weights and completeness") {
    DualSpace d = dual_cyclic(2);
    CHECK(d.size() == 2);
    CHECK(d.weights[0] == Catch::Approx(0.5));
    CHECK(d.weights[1] == Catch::Approx(0.5));
}

TEST_CASE("S3 dual: dims, weights and Plancherel bound") {
    DualSpace d = dual_s3();
    REQUIRE(d.size() == 3);
    int dim_sq = 0;
    double mhat = 0.0, weighted_dim = 0.0;
    for (int l = 0; l < d.size(); ++l) {
        dim_sq += d.irreps[l].dim * d.irreps[l].dim;
        mhat += d.weights[l];
        weighted_dim += d.weights[l] * d.irreps[l].dim;
    }
    CHECK(dim_sq == 6);
    CHECK(mhat == Catch::Approx(4.0 / 6.0));
    CHECK(mhat <= 1.0);
    CHECK(weighted_dim == Catch::Approx(1.0));
}

TEST_CASE("duplicate irrep detected as equivalent pair") {
    DualSpace d = dual_s3();
    FiniteGroup g = symmetric_group_3();
    CHECK_THROWS_AS(build_dual(g, {d.irreps[2], d.irreps[2], d.irreps[2]}), EquivalentPair);
}

TEST_CASE("incomplete irrep set rejected") {
    FiniteGroup g = symmetric_group_3();
    DualSpace d = dual_s3();
    CHECK_THROWS_AS(build_dual(g, {d.irreps[0], d.irreps[1]}), IncompleteSet);
}

TEST_CASE("Schur orthogonality for S3 and D4") {
    for (const DualSpace& d : {dual_s3(), dual_d4()}) {
        const int n = d.group.order;
        for (int la = 0; la < d.size(); ++la)
            for (int lb = 0; lb < d.size(); ++lb) {
                const auto& ra = d.irreps[la];
                const auto& rb = d.irreps[lb];
                for (int i = 0; i < ra.dim; ++i)
                    for (int j = 0; j < ra.dim; ++j)
                        for (int k = 0; k < rb.dim; ++k)
                            for (int l = 0; l < rb.dim; ++l) {
                                Complex s = 0.0;
                                for (int g = 0; g < n; ++g)
                                    s += ra(g)(i, j) * std::conj(rb(g)(k, l));
                                double expect = (la == lb && i == k && j == l)
                                                    ? double(n) / ra.dim
                                                    : 0.0;
                                CHECK(std::abs(s - expect) < 1e-10);
                            }
            }
    }
}

TEST_CASE("built-in duals are addressable by name") {
    CHECK(builtin_dual("Z6").group.order == 6);
    CHECK(builtin_dual("D4").group.order == 8);
    CHECK(builtin_dual("S3").group.order == 6);
    CHECK_THROWS_AS(builtin_dual("Q8"), ModelLoadError);
}
