#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "icmod/local.hpp"

using namespace icmod;

namespace {
Partition P(std::initializer_list<int> parts) { return Partition(std::vector<int>(parts)); }
const LaurentPoly one = LaurentPoly::constant(1);
const LaurentPoly t = LaurentPoly::t();
} // namespace

TEST_CASE("f_recursive", "[localdata]") {
    CHECK(f_recursive(P({1, 1}), 2) == one + t * Int(2));
    for (int g = 2; g <= 5; ++g)
        for (int r = 1; r <= 5; ++r) CHECK(f_recursive(P({r}), g) == p_series(r));
    for (int g = 2; g <= 6; ++g)
        CHECK(f_recursive(P({1, 1}), g) == p_series(g) * Int(2) - one);
    CHECK_THROWS_AS(f_recursive(P({1, 1}), 1), usage_error);
}

TEST_CASE("f_recursive matches f_via_graphs", "[localdata][property]") {
    for (int g = 2; g <= 4; ++g) {
        LocalContext ctx(g);
        for (int r = 1; r <= 4; ++r)
            for (const auto& rho : partitions_of(r))
                CHECK(ctx.fiber_recursive(rho) == f_via_graphs(rho, g));
    }
    SECTION("k = 5 spot check") {
        CHECK(f_recursive(P({1, 1, 1, 1, 1}), 2) == f_via_graphs(P({1, 1, 1, 1, 1}), 2));
    }
}

TEST_CASE("tower_poincare", "[localdata]") {
    CHECK(tower_poincare({1, 1}, 2) == one + LaurentPoly::monomial(1, 2));
    for (int g = 2; g <= 4; ++g)
        for (int r = 1; r <= 4; ++r) CHECK(tower_poincare({r}, g) == p_series(r).adams(2));

    SECTION("a tower step is a projective space of the predicted dimension") {
        // Degree of the product is 2(d(rho)+r-k) for the ranks of rho.
        for (int g = 2; g <= 4; ++g) {
            const Partition rho = P({1, 1, 1});
            auto tw = tower_poincare({1, 1, 1}, g);
            CHECK(tw.degree() == 2 * (d_rho(rho, g) + rho.sum() - rho.length()));
        }
    }

    SECTION("fiber injects into the union of towers (coefficientwise bound)") {
        for (int g = 2; g <= 3; ++g) {
            LocalContext ctx(g);
            for (int r = 1; r <= 4; ++r) {
                for (const auto& rho : partitions_of(r)) {
                    const int k = rho.length();
                    std::vector<int> idx(static_cast<std::size_t>(k));
                    std::iota(idx.begin(), idx.end(), 0);
                    LaurentPoly bound = LaurentPoly::zero();
                    do {
                        std::vector<int> ranks;
                        for (int i : idx) ranks.push_back(rho.part(i));
                        bound += tower_poincare(ranks, g);
                    } while (std::next_permutation(idx.begin(), idx.end()));
                    const LaurentPoly diff = bound - ctx.fiber_recursive(rho).adams(2);
                    CHECK_FALSE(diff.has_negative_coeff());
                }
            }
        }
    }
}

TEST_CASE("hilb_L closed form", "[localdata]") {
    CHECK(hilb_L_closed(P({1, 1}), 2) == LaurentPoly::monomial(1, 2));
    for (int g = 2; g <= 4; ++g)
        for (int r = 1; r <= 4; ++r) CHECK(hilb_L_closed(P({r}), g) == p_series(r).adams(2));
    CHECK(hilb_L_closed(P({2, 1}), 2) ==
          LaurentPoly::monomial(1, 4) + LaurentPoly::monomial(1, 6));
}

TEST_CASE("hilb_L subtraction algorithm", "[localdata]") {
    CHECK(hilb_L_subtraction(P({1, 1}), 2) == LaurentPoly::monomial(1, 2));
    CHECK(hilb_L_subtraction(P({1, 1}), 3) == LaurentPoly::monomial(1, 4));
    for (int g = 2; g <= 4; ++g)
        for (int r = 1; r <= 4; ++r)
            CHECK(hilb_L_subtraction(P({r}), g) == p_series(r).adams(2));
}

TEST_CASE("closed form == subtraction for all rho, r <= 5", "[localdata][property]") {
    for (int g = 2; g <= 4; ++g) {
        LocalContext ctx(g);
        for (int r = 1; r <= 5; ++r) {
            for (const auto& rho : partitions_of(r)) {
                CHECK(ctx.hilb_L_closed(rho) == ctx.hilb_L_subtraction(rho));
            }
        }
    }
}

TEST_CASE("Hilb(L) palindromic about 2 d(rho) + sum(r_i - 1)", "[localdata][property]") {
    for (int g = 2; g <= 4; ++g) {
        LocalContext ctx(g);
        for (int r = 1; r <= 5; ++r) {
            for (const auto& rho : partitions_of(r)) {
                const int center =
                    2 * static_cast<int>(d_rho(rho, g)) + rho.sum() - rho.length();
                CHECK(ctx.hilb_L_closed(rho).is_palindromic(center));
            }
        }
    }
}

TEST_CASE("bijection identity", "[localdata]") {
    CHECK(f_cross_identity(P({1, 1}), 2));
    for (int g = 2; g <= 4; ++g)
        for (int r = 1; r <= 4; ++r) CHECK(f_cross_identity(P({r}), g));

    SECTION("all rho with r <= 5, g in {2,3,4}") {
        for (int g = 2; g <= 4; ++g) {
            LocalContext ctx(g);
            for (int r = 1; r <= 5; ++r)
                for (const auto& rho : partitions_of(r)) CHECK(ctx.f_cross_identity(rho));
        }
    }
}

TEST_CASE("f at t=1 counts minimal rooted acyclic spanning subgraphs", "[localdata][property]") {
    for (int g = 2; g <= 3; ++g) {
        for (int r = 1; r <= 4; ++r) {
            for (const auto& rho : partitions_of(r)) {
                const auto raw = acyc_rooted_genpoly(build_F_rho(rho, g), 0);
                CHECK(f_recursive(rho, g).eval_at_one() == raw.coeff(rho.length()));
            }
        }
    }
}
