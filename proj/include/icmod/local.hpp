#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "icmod/digraph.hpp"
#include "icmod/laurent.hpp"
#include "icmod/partitions.hpp"

namespace icmod {

/// Per-genus computation context memoizing the quantities that recur across
/// the recursions: fiber polynomials f(rho;t), stalk polynomials g(rho;t)
/// and local-system Hilbert functions.  Cache entries are immutable once
/// written; concurrent reads are fine and concurrent writes are idempotent
/// (every writer stores the same value).
class LocalContext {
public:
    explicit LocalContext(int g) : genus_(g) { require_genus(g); }

    int genus() const { return genus_; }

    /// f(rho; t) via the inclusion-exclusion recursion over nonempty subsets
    /// J of the parts: f(rho) = sum_J (-1)^{|J|-1} f(rho_Jbar)
    /// prod_{j in J} p(r_j r_Jbar (g-1) + r_j; t), with f(empty) = 1.
    LaurentPoly fiber_recursive(const Partition& rho) {
        if (auto hit = lookup(kFiber, rho)) return *hit;
        const int k = rho.length();
        LaurentPoly acc = LaurentPoly::zero();
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            std::vector<int> in_j, out_j;
            int r_bar = 0;
            for (int i = 0; i < k; ++i) {
                if (mask & (1u << i)) {
                    in_j.push_back(rho.part(i));
                } else {
                    out_j.push_back(rho.part(i));
                    r_bar += rho.part(i);
                }
            }
            LaurentPoly term = out_j.empty() ? LaurentPoly::constant(1)
                                             : fiber_recursive(Partition(out_j));
            for (int rj : in_j) term *= p_series(rj * r_bar * (genus_ - 1) + rj);
            acc += (in_j.size() % 2 == 1) ? term : -term;
        }
        return store(kFiber, rho, std::move(acc));
    }

    /// g(rho; t) from the graph model (root-independent; root 1 used).
    LaurentPoly stalk_graphs(const Partition& rho) {
        if (auto hit = lookup(kStalk, rho)) return *hit;
        return store(kStalk, rho, g_via_graphs(rho, genus_, 1));
    }

    /// Hilb(L_rho) in closed form: t^{2 d(rho)} prod_i p(r_i; t^2).
    LaurentPoly hilb_L_closed(const Partition& rho) {
        LaurentPoly acc = LaurentPoly::monomial(1, 2 * static_cast<int>(d_rho(rho, genus_)));
        for (int ri : rho.parts()) acc *= p_series(ri).adams(2);
        return acc;
    }

    /// Hilb(L_rho) by the subtraction algorithm:
    ///   Hilb(L_rho) = f(rho; t^2)
    ///               - sum_lambda Hilb(L_{lambda o rho}) prod_j g(rho|lambda_j; t^2),
    /// the sum over set decompositions of {1..k} other than the all-singletons
    /// one (that term is the left-hand side itself).  Values on coarser
    /// partitions recurse; singleton blocks contribute g([r]; t^2) = 1.
    LaurentPoly hilb_L_subtraction(const Partition& rho) {
        if (auto hit = lookup(kHilbL, rho)) return *hit;
        LaurentPoly acc = fiber_recursive(rho).adams(2);
        for (const auto& lambda : set_decompositions(rho.length())) {
            if (lambda.is_all_singletons()) continue;
            const Composition comp = compose(lambda, rho);
            LaurentPoly term = hilb_L_subtraction(comp.mu);
            for (const auto& block : comp.restricted) term *= stalk_graphs(block).adams(2);
            acc -= term;
        }
        if (acc.has_negative_coeff())
            throw computation_error("hilb_L_subtraction: negative coefficient for rho = [" +
                                    rho.str() + "]");
        return store(kHilbL, rho, std::move(acc));
    }

    /// Right-hand side of the bijection identity:
    ///   sum_lambda t^{d(lambda o rho)}
    ///              prod_i g(rho|lambda_i; t) p(r_{lambda_i}; t),
    /// a third, independent route to f(rho; t).
    LaurentPoly fiber_via_identity(const Partition& rho) {
        LaurentPoly rhs = LaurentPoly::zero();
        for (const auto& lambda : set_decompositions(rho.length())) {
            const Composition comp = compose(lambda, rho);
            LaurentPoly term =
                LaurentPoly::monomial(1, static_cast<int>(d_rho(comp.mu, genus_)));
            for (std::size_t j = 0; j < comp.restricted.size(); ++j) {
                term *= stalk_graphs(comp.restricted[j]);
                term *= p_series(comp.mu.part(static_cast<int>(j)));
            }
            rhs += term;
        }
        return rhs;
    }

    /// The bijection identity, with f from the recursion and g from the
    /// graph model.
    bool f_cross_identity(const Partition& rho) {
        return fiber_recursive(rho) == fiber_via_identity(rho);
    }

private:
    static constexpr int kFiber = 0;
    static constexpr int kStalk = 1;
    static constexpr int kHilbL = 2;

    std::optional<LaurentPoly> lookup(int kind, const Partition& rho) const {
        std::shared_lock lock(mutex_);
        auto it = cache_.find({kind, rho});
        if (it == cache_.end()) return std::nullopt;
        return it->second;
    }

    LaurentPoly store(int kind, const Partition& rho, LaurentPoly value) {
        std::unique_lock lock(mutex_);
        return cache_.emplace(std::make_pair(kind, rho), std::move(value)).first->second;
    }

    int genus_;
    mutable std::shared_mutex mutex_;
    std::map<std::pair<int, Partition>, LaurentPoly> cache_;
};

/// Free-function forms of the LocalContext operations.
inline LaurentPoly f_recursive(const Partition& rho, int g) {
    return LocalContext(g).fiber_recursive(rho);
}

inline LaurentPoly hilb_L_closed(const Partition& rho, int g) {
    return LocalContext(g).hilb_L_closed(rho);
}

inline LaurentPoly hilb_L_subtraction(const Partition& rho, int g) {
    return LocalContext(g).hilb_L_subtraction(rho);
}

inline bool f_cross_identity(const Partition& rho, int g) {
    return LocalContext(g).f_cross_identity(rho);
}

/// Poincare polynomial of the projective tower over an ordered rank
/// sequence: the i-th fibration step is a projective space of dimension
/// r_i (r_1 + ... + r_{i-1})(g-1) + r_i - 1, so each factor is
/// (t^{2 r_i (r_1+...+r_{i-1})(g-1) + 2 r_i} - 1) / (t^2 - 1), exactly.
inline LaurentPoly tower_poincare(const std::vector<int>& ranks, int g) {
    require_genus(g);
    if (ranks.empty()) throw usage_error("tower_poincare: nonempty rank sequence required");
    const LaurentPoly den =
        LaurentPoly::monomial(1, 2) - LaurentPoly::constant(1);
    LaurentPoly acc = LaurentPoly::constant(1);
    int prefix = 0;
    for (int ri : ranks) {
        if (ri < 1) throw usage_error("tower_poincare: ranks must be positive");
        const int n = ri * prefix * (g - 1) + ri;
        const LaurentPoly num = LaurentPoly::monomial(1, 2 * n) - LaurentPoly::constant(1);
        acc *= exact_div(num, den);
        prefix += ri;
    }
    return acc;
}

} // namespace icmod
