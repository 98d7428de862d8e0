#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cstdint>

#include "icmod/digraph.hpp"

using namespace icmod;

namespace {

Partition P(std::initializer_list<int> parts) { return Partition(std::vector<int>(parts)); }

/// Naive oracle: expand every parallel arc into an individual edge and walk
/// all 2^(total multiplicity) subsets, testing acyclicity and rootedness
/// directly on each one.  Only independent of the library path: no supports,
/// no weights, no DP.
LaurentPoly naive_genpoly(const WeightedDigraph& G, int root) {
    struct Arc {
        int i, j;
    };
    std::vector<Arc> arcs;
    const int n = G.vertex_count();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; i != j && m < G.mult(i, j); ++m) arcs.push_back({i, j});
    REQUIRE(arcs.size() <= 20);

    LaurentPoly total = LaurentPoly::zero();
    for (std::uint32_t mask = 0; mask < (1u << arcs.size()); ++mask) {
        // adjacency of the selected subset
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
        for (std::size_t a = 0; a < arcs.size(); ++a)
            if (mask & (1u << a)) adj[static_cast<std::size_t>(arcs[a].i)].push_back(arcs[a].j);

        // acyclicity by repeated sink removal
        std::vector<int> outdeg(static_cast<std::size_t>(n), 0);
        for (int v = 0; v < n; ++v) outdeg[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
        std::vector<bool> removed(static_cast<std::size_t>(n), false);
        bool progress = true;
        int alive = n;
        while (progress) {
            progress = false;
            for (int v = 0; v < n; ++v) {
                if (removed[static_cast<std::size_t>(v)]) continue;
                int live_out = 0;
                for (int w : adj[static_cast<std::size_t>(v)])
                    if (!removed[static_cast<std::size_t>(w)]) ++live_out;
                if (live_out == 0) {
                    removed[static_cast<std::size_t>(v)] = true;
                    --alive;
                    progress = true;
                }
            }
        }
        if (alive != 0) continue; // a cycle survived

        // rootedness: every vertex reaches root (DFS per vertex)
        bool rooted = true;
        for (int v = 0; v < n && rooted; ++v) {
            std::vector<bool> seen(static_cast<std::size_t>(n), false);
            std::vector<int> stack{v};
            seen[static_cast<std::size_t>(v)] = true;
            bool hit = v == root;
            while (!stack.empty() && !hit) {
                int x = stack.back();
                stack.pop_back();
                for (int w : adj[static_cast<std::size_t>(x)]) {
                    if (w == root) hit = true;
                    if (!seen[static_cast<std::size_t>(w)]) {
                        seen[static_cast<std::size_t>(w)] = true;
                        stack.push_back(w);
                    }
                }
            }
            rooted = hit;
        }
        if (!rooted) continue;
        total += LaurentPoly::monomial(1, std::popcount(mask));
    }
    return total;
}

} // namespace

TEST_CASE("build_F_rho", "[graphkernel]") {
    SECTION("rho = [1,1], g = 2") {
        auto G = build_F_rho(P({1, 1}), 2);
        CHECK(G.vertex_count() == 3);
        CHECK(G.mult(1, 0) == 1);
        CHECK(G.mult(2, 0) == 1);
        CHECK(G.mult(1, 2) == 1);
        CHECK(G.mult(2, 1) == 1);
        CHECK(G.mult(0, 1) == 0);
        CHECK(G.root() == 0);
    }
    SECTION("rho = [1]") {
        for (int g = 2; g <= 4; ++g) {
            auto G = build_F_rho(P({1}), g);
            CHECK(G.vertex_count() == 2);
            CHECK(G.mult(1, 0) == 1);
            CHECK(G.total_multiplicity() == 1);
        }
    }
    SECTION("rho = [2,1], g = 3") {
        auto G = build_F_rho(P({2, 1}), 3);
        CHECK(G.mult(1, 0) == 2);
        CHECK(G.mult(2, 0) == 1);
        CHECK(G.mult(1, 2) == 4);
        CHECK(G.mult(2, 1) == 4);
    }
    CHECK_THROWS_AS(build_F_rho(P({1}), 1), usage_error);
}

TEST_CASE("build_F_circ", "[graphkernel]") {
    auto G = build_F_circ(P({1, 1}), 2);
    CHECK(G.vertex_count() == 2);
    CHECK(G.mult(0, 1) == 1);
    CHECK(G.mult(1, 0) == 1);

    auto G3 = build_F_circ(P({1, 1}), 3);
    CHECK(G3.mult(0, 1) == 2);
    CHECK(G3.mult(1, 0) == 2);

    auto G1 = build_F_circ(P({4}), 2);
    CHECK(G1.vertex_count() == 1);
    CHECK(G1.total_multiplicity() == 0);
}

TEST_CASE("acyc_rooted_genpoly", "[graphkernel]") {
    SECTION("single vertex") {
        WeightedDigraph G(1);
        CHECK(acyc_rooted_genpoly(G, 0) == LaurentPoly::constant(1));
    }
    SECTION("two vertices, m parallel arcs each way") {
        for (int m = 1; m <= 4; ++m) {
            WeightedDigraph G(2);
            G.set_mult(0, 1, m);
            G.set_mult(1, 0, m);
            const auto expected =
                (LaurentPoly::constant(1) + LaurentPoly::t()).pow(m) - LaurentPoly::constant(1);
            CHECK(acyc_rooted_genpoly(G, 1) == expected);
            CHECK(acyc_rooted_genpoly(G, 1) == naive_genpoly(G, 1));
        }
    }
    SECTION("F_[1,1] at g=2, root 0: 3t^2 + 2t^3") {
        auto G = build_F_rho(P({1, 1}), 2);
        LaurentPoly expected;
        expected.add_term({2, 0}, 3);
        expected.add_term({3, 0}, 2);
        CHECK(acyc_rooted_genpoly(G, 0) == expected);
    }
    SECTION("unreachable root gives zero") {
        WeightedDigraph G(3);
        G.set_mult(0, 1, 1); // vertex 2 isolated
        CHECK(acyc_rooted_genpoly(G, 1).is_zero());
    }
    SECTION("root out of range") {
        WeightedDigraph G(2);
        CHECK_THROWS_AS(acyc_rooted_genpoly(G, 2), usage_error);
    }
}

TEST_CASE("genpoly agrees with the expanded-arc oracle", "[graphkernel][property]") {
    // Every F_rho / F_circ instance with total multiplicity <= 16, plus the
    // boundary case [1,1,1,1] at g=2 whose F graph has exactly 16 arcs.
    for (int g = 2; g <= 4; ++g) {
        for (int r = 1; r <= 5; ++r) {
            for (const auto& rho : partitions_of(r)) {
                auto Gf = build_F_rho(rho, g);
                if (Gf.total_multiplicity() <= 16)
                    CHECK(acyc_rooted_genpoly(Gf, 0) == naive_genpoly(Gf, 0));
                auto Gc = build_F_circ(rho, g);
                if (Gc.total_multiplicity() <= 16) {
                    for (int root = 0; root < Gc.vertex_count(); ++root)
                        CHECK(acyc_rooted_genpoly(Gc, root) == naive_genpoly(Gc, root));
                }
            }
        }
    }
}

TEST_CASE("enumeration and layer DP agree", "[graphkernel][property]") {
    for (int g = 2; g <= 3; ++g) {
        for (int r = 1; r <= 5; ++r) {
            for (const auto& rho : partitions_of(r)) {
                auto Gf = build_F_rho(rho, g);
                if (Gf.vertex_count() <= 5)
                    CHECK(detail::acyc_genpoly_enum(Gf, 0) == detail::acyc_genpoly_dp(Gf, 0));
                auto Gc = build_F_circ(rho, g);
                CHECK(detail::acyc_genpoly_enum(Gc, 0) == detail::acyc_genpoly_dp(Gc, 0));
            }
        }
    }
}

TEST_CASE("f_via_graphs", "[graphkernel]") {
    const LaurentPoly one = LaurentPoly::constant(1);
    const LaurentPoly t = LaurentPoly::t();
    for (int g = 2; g <= 5; ++g) CHECK(f_via_graphs(P({1}), g) == one);
    CHECK(f_via_graphs(P({1, 1}), 2) == one + t * Int(2));
    for (int g = 2; g <= 5; ++g) CHECK(f_via_graphs(P({2}), g) == one + t);
    for (int g = 2; g <= 5; ++g) CHECK(f_via_graphs(P({3}), g) == p_series(3));

    SECTION("degree d(rho)+r-k, leading coefficient k!, constant term 1") {
        for (int g = 2; g <= 4; ++g) {
            for (int r = 1; r <= 4; ++r) {
                for (const auto& rho : partitions_of(r)) {
                    auto f = f_via_graphs(rho, g);
                    const int k = rho.length();
                    CHECK(f.degree() == d_rho(rho, g) + r - k);
                    Int kfact = 1;
                    for (int i = 2; i <= k; ++i) kfact *= i;
                    CHECK(f.coeff(f.degree()) == kfact);
                    CHECK(f.coeff(0) == 1);
                }
            }
        }
    }
}

TEST_CASE("g_via_graphs", "[graphkernel]") {
    const LaurentPoly one = LaurentPoly::constant(1);
    CHECK(g_via_graphs(P({1, 1}), 2, 1) == one);
    CHECK(g_via_graphs(P({1, 1}), 3, 1) == one + LaurentPoly::t());
    for (int g = 2; g <= 6; ++g) CHECK(g_via_graphs(P({1, 1}), g, 1) == p_series(g - 1));
    for (int g = 2; g <= 4; ++g) CHECK(g_via_graphs(P({7}), g) == one);

    SECTION("root independence") {
        for (int g = 2; g <= 4; ++g) {
            for (int r = 2; r <= 5; ++r) {
                for (const auto& rho : partitions_of(r)) {
                    const auto ref = g_via_graphs(rho, g, 1);
                    for (int root = 2; root <= rho.length(); ++root)
                        CHECK(g_via_graphs(rho, g, root) == ref);
                }
            }
        }
    }

    SECTION("degree d(rho)-k+1 for k >= 2, constant term >= 1") {
        for (int g = 2; g <= 4; ++g) {
            for (int r = 2; r <= 5; ++r) {
                for (const auto& rho : partitions_of(r)) {
                    if (rho.length() < 2) continue;
                    auto gp = g_via_graphs(rho, g, 1);
                    CHECK(gp.degree() == d_rho(rho, g) - rho.length() + 1);
                    CHECK(gp.coeff(0) >= 1);
                }
            }
        }
    }

    CHECK_THROWS_AS(g_via_graphs(P({1, 1}), 2, 3), usage_error);
    CHECK_THROWS_AS(g_via_graphs(P({1, 1}), 2, 0), usage_error);
}
