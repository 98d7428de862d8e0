#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "icmod/laurent.hpp"
#include "icmod/partitions.hpp"

namespace icmod {

/// Weighted digraph: vertex set {0,...,n-1} with integer arc multiplicities
/// and no self-loops.
class WeightedDigraph {
public:
    explicit WeightedDigraph(int n) : n_(n), mult_(static_cast<std::size_t>(n) * n, 0) {
        if (n < 1) throw usage_error("WeightedDigraph: at least one vertex required");
        if (n > 30) throw usage_error("WeightedDigraph: vertex count too large");
    }

    int vertex_count() const { return n_; }

    int mult(int i, int j) const {
        check_vertex(i);
        check_vertex(j);
        return mult_[static_cast<std::size_t>(i) * n_ + j];
    }

    void set_mult(int i, int j, int m) {
        check_vertex(i);
        check_vertex(j);
        if (i == j) throw usage_error("WeightedDigraph: no self-loops");
        if (m < 0) throw usage_error("WeightedDigraph: multiplicity >= 0 required");
        mult_[static_cast<std::size_t>(i) * n_ + j] = m;
    }

    int total_multiplicity() const {
        int s = 0;
        for (int m : mult_) s += m;
        return s;
    }

    std::optional<int> root() const { return root_; }
    void set_root(int r) {
        check_vertex(r);
        root_ = r;
    }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw usage_error("WeightedDigraph: vertex out of range");
    }

    int n_;
    std::vector<int> mult_;
    std::optional<int> root_;
};

/// The graph on vertices {0,...,k}: r_i arcs from part-vertex i to the root
/// vertex 0 and r_i r_j (g-1) arcs between distinct part-vertices; no arcs
/// out of 0.  Root designated as 0.
inline WeightedDigraph build_F_rho(const Partition& rho, int g) {
    require_genus(g);
    const int k = rho.length();
    WeightedDigraph G(k + 1);
    for (int i = 1; i <= k; ++i) {
        G.set_mult(i, 0, rho.part(i - 1));
        for (int j = 1; j <= k; ++j)
            if (i != j) G.set_mult(i, j, rho.part(i - 1) * rho.part(j - 1) * (g - 1));
    }
    G.set_root(0);
    return G;
}

/// The same graph with vertex 0 removed: vertex v represents part v+1 of
/// rho.  No root designated.
inline WeightedDigraph build_F_circ(const Partition& rho, int g) {
    require_genus(g);
    const int k = rho.length();
    WeightedDigraph G(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j) G.set_mult(i, j, rho.part(i) * rho.part(j) * (g - 1));
    return G;
}

namespace detail {

inline LaurentPoly arc_weight(int mult) {
    // Sum over nonempty subsets of `mult` parallel arcs: (1+t)^mult - 1.
    return (LaurentPoly::constant(1) + LaurentPoly::t()).pow(mult) - LaurentPoly::constant(1);
}

/// Subset enumeration over arc supports (sets of ordered pairs) with
/// incremental cycle detection; rootedness checked at the leaves.
inline LaurentPoly acyc_genpoly_enum(const WeightedDigraph& G, int root) {
    const int n = G.vertex_count();
    struct Pair {
        int i, j;
        LaurentPoly w;
    };
    std::vector<Pair> pairs;
    for (int i = 0; i < n; ++i) {
        if (i == root) continue; // an out-arc from the root closes a cycle with rootedness
        for (int j = 0; j < n; ++j)
            if (i != j && G.mult(i, j) > 0) pairs.push_back({i, j, arc_weight(G.mult(i, j))});
    }

    // reach[v] = bitmask of vertices reachable from v along the chosen arcs
    // (including v itself); kept as a full transitive closure so that a cycle
    // shows up as i in reach[j] when adding arc (i, j).
    std::vector<std::uint32_t> reach(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) reach[static_cast<std::size_t>(v)] = 1u << v;
    std::vector<std::pair<int, int>> chosen;

    LaurentPoly total = LaurentPoly::zero();
    LaurentPoly prod = LaurentPoly::constant(1);

    auto rec = [&](auto&& self, std::size_t idx, const LaurentPoly& acc) -> void {
        if (idx == pairs.size()) {
            const std::uint32_t rbit = 1u << root;
            for (int v = 0; v < n; ++v)
                if (!(reach[static_cast<std::size_t>(v)] & rbit)) return;
            total += acc;
            return;
        }
        const auto& pr = pairs[idx];
        // exclude
        self(self, idx + 1, acc);
        // include, unless it closes a cycle
        if (reach[static_cast<std::size_t>(pr.j)] & (1u << pr.i)) return;
        auto saved = reach;
        for (int v = 0; v < n; ++v)
            if (reach[static_cast<std::size_t>(v)] & (1u << pr.i))
                reach[static_cast<std::size_t>(v)] |= reach[static_cast<std::size_t>(pr.j)];
        self(self, idx + 1, acc * pr.w);
        reach = std::move(saved);
    };
    rec(rec, 0, prod);
    return total;
}

/// Layer-peeling dynamic program.  A support is acyclic and rooted in `root`
/// exactly when root is its unique sink; peeling sinks layer by layer gives
/// an ordered partition (S_1 = {root}, S_2, ...) where each vertex of S_a
/// sends arcs only into earlier layers, at least one of them into S_{a-1}.
/// States are (processed set P, last layer S); the transition multiplies, for
/// each vertex v of the new layer T, the factor W(v, P) - W(v, P minus S)
/// with W(v, U) = prod_{u in U} (1+t)^{mult(v,u)}.
inline LaurentPoly acyc_genpoly_dp(const WeightedDigraph& G, int root) {
    const int n = G.vertex_count();
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);

    // (1+t)^mult per arc, on demand.
    std::vector<std::vector<LaurentPoly>> arc_pow(static_cast<std::size_t>(n));
    const LaurentPoly one_plus_t = LaurentPoly::constant(1) + LaurentPoly::t();
    for (int v = 0; v < n; ++v) {
        arc_pow[static_cast<std::size_t>(v)].resize(static_cast<std::size_t>(n));
        for (int u = 0; u < n; ++u)
            arc_pow[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] =
                (v == u) ? LaurentPoly::constant(1) : one_plus_t.pow(G.mult(v, u));
    }
    // W(v, mask), memoized over submasks by peeling the lowest bit.
    std::vector<std::map<std::uint32_t, LaurentPoly>> wmemo(static_cast<std::size_t>(n));
    auto W = [&](auto&& self, int v, std::uint32_t mask) -> const LaurentPoly& {
        auto& memo = wmemo[static_cast<std::size_t>(v)];
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        LaurentPoly val;
        if (mask == 0) {
            val = LaurentPoly::constant(1);
        } else {
            const int u = std::countr_zero(mask);
            val = self(self, v, mask & (mask - 1)) *
                  arc_pow[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)];
        }
        return memo.emplace(mask, std::move(val)).first->second;
    };

    std::map<std::pair<std::uint32_t, std::uint32_t>, LaurentPoly> dp;
    const std::uint32_t rbit = 1u << root;
    dp[{rbit, rbit}] = LaurentPoly::constant(1);

    // Process states by growing processed-set size.
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> by_size(
        static_cast<std::size_t>(n) + 1);
    by_size[1].push_back({rbit, rbit});
    for (int size = 1; size < n; ++size) {
        for (const auto& key : by_size[static_cast<std::size_t>(size)]) {
            const auto [pmask, smask] = key;
            const LaurentPoly& value = dp.at(key);
            const std::uint32_t rest = full & ~pmask;
            // All nonempty subsets T of rest.
            for (std::uint32_t t = rest; t != 0; t = (t - 1) & rest) {
                LaurentPoly factor = LaurentPoly::constant(1);
                bool dead = false;
                for (std::uint32_t bits = t; bits != 0; bits &= bits - 1) {
                    const int v = std::countr_zero(bits);
                    LaurentPoly f = W(W, v, pmask) - W(W, v, pmask & ~smask);
                    if (f.is_zero()) {
                        dead = true;
                        break;
                    }
                    factor *= f;
                }
                if (!dead) {
                    const std::pair<std::uint32_t, std::uint32_t> nk{pmask | t, t};
                    auto [it, inserted] = dp.emplace(nk, value * factor);
                    if (!inserted) it->second += value * factor;
                    else by_size[static_cast<std::size_t>(std::popcount(nk.first))].push_back(nk);
                }
            }
        }
    }

    LaurentPoly total = LaurentPoly::zero();
    for (const auto& [key, value] : dp)
        if (key.first == full) total += value;
    return total;
}

} // namespace detail

/// Generating polynomial sum_H t^{e(H)} over spanning subgraphs H (arbitrary
/// subsets of the parallel arcs) that are acyclic and in which every vertex
/// has an oriented path to `root`.  Grouping subgraphs by their support
/// turns the sum into sum over acyclic rooted supports of
/// prod ((1+t)^mult - 1).  Zero when some vertex cannot reach the root.
inline LaurentPoly acyc_rooted_genpoly(const WeightedDigraph& G, int root) {
    if (root < 0 || root >= G.vertex_count())
        throw usage_error("acyc_rooted_genpoly: root out of range");
    // Past 5 vertices the support enumeration blows up; the layered DP is
    // polynomial in 3^n and takes over.
    if (G.vertex_count() <= 5) return detail::acyc_genpoly_enum(G, root);
    return detail::acyc_genpoly_dp(G, root);
}

namespace detail {

inline LaurentPoly normalized_acyc(const WeightedDigraph& G, int root, int min_edges,
                                   const char* who) {
    LaurentPoly raw = acyc_rooted_genpoly(G, root);
    if (raw.is_zero())
        throw computation_error(std::string(who) + ": no rooted acyclic spanning subgraph");
    if (raw.min_exp() < min_edges)
        throw computation_error(std::string(who) + ": division by t^" + std::to_string(min_edges) +
                                " inexact");
    return raw.shifted(-min_edges).compose_t_minus_one();
}

} // namespace detail

/// Fiber polynomial f(rho; t) from the graph model: normalize the generating
/// polynomial of F_rho by t^k and substitute t -> t-1.
inline LaurentPoly f_via_graphs(const Partition& rho, int g) {
    const WeightedDigraph G = build_F_rho(rho, g);
    return detail::normalized_acyc(G, 0, rho.length(), "f_via_graphs");
}

/// IC-stalk polynomial g(rho; t) from the graph model on the rootless graph;
/// `root_part` picks any part in 1..k (the result is root-independent).
inline LaurentPoly g_via_graphs(const Partition& rho, int g, int root_part = 1) {
    const int k = rho.length();
    if (root_part < 1 || root_part > k)
        throw usage_error("g_via_graphs: root out of range");
    const WeightedDigraph G = build_F_circ(rho, g);
    return detail::normalized_acyc(G, root_part - 1, k - 1, "g_via_graphs");
}

} // namespace icmod
