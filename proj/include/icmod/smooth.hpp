#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "icmod/laurent.hpp"
#include "icmod/serialize.hpp"

namespace icmod {

namespace detail {

/// Truncated power-series product: exponents >= 0, terms of total degree
/// above `bound` dropped.
inline LaurentPoly trunc_mul(const LaurentPoly& a, const LaurentPoly& b, int bound) {
    LaurentPoly r(a.arity() == Arity::bivariate || b.arity() == Arity::bivariate
                      ? Arity::bivariate
                      : Arity::univariate);
    for (const auto& [ea, ca] : a.terms()) {
        if (ea.total() > bound) continue;
        for (const auto& [eb, cb] : b.terms()) {
            const Exp e{ea.a + eb.a, ea.b + eb.b};
            if (e.total() > bound) continue;
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

/// Geometric series 1/(1 - mono) truncated by total degree.
inline LaurentPoly geom_inverse(const LaurentPoly& mono, int bound) {
    if (mono.term_count() != 1) throw usage_error("geom_inverse: monomial expected");
    const auto& [e, c] = *mono.terms().begin();
    if (c != 1 || e.total() <= 0) throw usage_error("geom_inverse: 1/(1 - m) with positive-degree unit monomial required");
    LaurentPoly r(mono.arity());
    for (int j = 0; j * e.total() <= bound; ++j) r.add_term({e.a * j, e.b * j}, 1);
    return r;
}

/// Harder-Narasimhan engine over a fixed genus, truncation bound and
/// variable arity.  Univariate mode computes Poincare series of stacks of
/// bundles on the curve; bivariate mode computes the signed Hodge series
/// (diagonal u = v = t recovers the signed Poincare series).  The semistable
/// series comes from the all-bundles series by subtracting, over HN types
/// with strictly decreasing slopes, products of lower-rank semistable series
/// shifted by twice the stratum codimension.
class HNEngine {
public:
    HNEngine(int g, int bound, Arity ar) : g_(g), bound_(bound), ar_(ar) { require_genus(g); }

    /// Series of the stack of all rank-n bundles; degree-independent.
    const LaurentPoly& bun(int n) {
        auto it = bun_memo_.find(n);
        if (it != bun_memo_.end()) return it->second;
        const LaurentPoly one = LaurentPoly::constant(1, ar_);
        LaurentPoly acc = one;
        for (int i = 1; i <= n; ++i) {
            if (ar_ == Arity::univariate) {
                const LaurentPoly f = one + LaurentPoly::monomial(1, 2 * i - 1);
                acc = trunc_mul(acc, f.pow(2 * g_), bound_);
            } else {
                const LaurentPoly f1 = one - LaurentPoly::monomial2(1, i, i - 1);
                const LaurentPoly f2 = one - LaurentPoly::monomial2(1, i - 1, i);
                acc = trunc_mul(acc, trunc_mul(f1.pow(g_), f2.pow(g_), bound_), bound_);
            }
        }
        acc = trunc_mul(acc, geom_inverse(weight_monomial(n), bound_), bound_);
        for (int i = 1; i < n; ++i) {
            const LaurentPoly geo = geom_inverse(weight_monomial(i), bound_);
            acc = trunc_mul(acc, trunc_mul(geo, geo, bound_), bound_);
        }
        return bun_memo_.emplace(n, std::move(acc)).first->second;
    }

    /// Series of the semistable stack of rank n, degree d bundles.
    /// Tensoring by a degree-1 line bundle identifies d with d mod n.
    const LaurentPoly& ss(int n, int d) {
        const std::pair<int, int> key{n, ((d % n) + n) % n};
        auto it = ss_memo_.find(key);
        if (it != ss_memo_.end()) return it->second;
        LaurentPoly value = bun(n);
        if (n > 1) {
            // Subtract every HN type with at least two quotients.  The
            // aggregated codimension of the split (n1,d1 | rest) is
            //   delta = n d1 - n1 d + n1 (n - n1)(g - 1),
            // which grows monotonically in d1, so the degree budget
            // terminates the degree sum.
            for (int n1 = 1; n1 < n; ++n1) {
                const int dd = key.second;
                for (int d1 = floor_div(dd * n1, n) + 1;; ++d1) {
                    const long delta = static_cast<long>(n) * d1 - static_cast<long>(n1) * dd +
                                       static_cast<long>(n1) * (n - n1) * (g_ - 1);
                    if (2 * delta > bound_) break;
                    const LaurentPoly tail =
                        hn_tail(n - n1, dd - d1, d1, n1, bound_ - 2 * static_cast<int>(delta));
                    if (tail.is_zero()) continue;
                    const LaurentPoly piece =
                        trunc_mul(trunc_mul(ss(n1, d1), tail, bound_),
                                  shift_monomial(static_cast<int>(delta)), bound_);
                    value -= piece;
                }
            }
        }
        return ss_memo_.emplace(key, std::move(value)).first->second;
    }

private:
    /// Weight of one codimension unit: t^2, resp. uv.
    LaurentPoly weight_monomial(int i) const {
        return ar_ == Arity::univariate ? LaurentPoly::monomial(1, 2 * i)
                                        : LaurentPoly::monomial2(1, i, i);
    }
    LaurentPoly shift_monomial(int delta) const {
        return ar_ == Arity::univariate ? LaurentPoly::monomial(1, 2 * delta)
                                        : LaurentPoly::monomial2(1, delta, delta);
    }

    static int floor_div(int a, int b) {
        int q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
        return q;
    }

    /// Sum over HN types of (n, d) whose slopes are all strictly below
    /// sn/sd, weighted by semistable series and codimension shifts, with the
    /// remaining degree budget.  One or more quotients.
    LaurentPoly hn_tail(int n, int d, int sn, int sd, int budget) {
        if (budget < 0) return LaurentPoly::zero(ar_);
        LaurentPoly acc(ar_);
        // single quotient: slope d/n < sn/sd
        if (static_cast<long>(d) * sd < static_cast<long>(sn) * n) acc += ss(n, d);
        for (int n1 = 1; n1 < n; ++n1) {
            for (int d1 = floor_div(d * n1, n) + 1;; ++d1) {
                if (static_cast<long>(d1) * sd >= static_cast<long>(sn) * n1) break;
                const long delta = static_cast<long>(n) * d1 - static_cast<long>(n1) * d +
                                   static_cast<long>(n1) * (n - n1) * (g_ - 1);
                if (2 * delta > budget) break;
                const LaurentPoly tail =
                    hn_tail(n - n1, d - d1, d1, n1, budget - 2 * static_cast<int>(delta));
                if (tail.is_zero()) continue;
                acc += trunc_mul(trunc_mul(ss(n1, d1), tail, bound_),
                                 shift_monomial(static_cast<int>(delta)), bound_);
            }
        }
        return acc;
    }

    int g_;
    int bound_;
    Arity ar_;
    std::map<int, LaurentPoly> bun_memo_;
    std::map<std::pair<int, int>, LaurentPoly> ss_memo_;
};

} // namespace detail

/// Poincare polynomial of the smooth moduli space of rank-r, degree-1
/// semistable bundles: (1 - t^2) times the semistable stack series, computed
/// by the HN recursion at truncation degree 2((g-1)r^2 + 1) + 1.  The
/// trailing truncation coefficient must vanish (the result is a polynomial
/// of degree exactly twice the dimension); this is asserted.
inline LaurentPoly hn_poincare_m1(int r, int g) {
    require_genus(g);
    if (r < 1) throw usage_error("hn_poincare_m1: r >= 1 required");
    const int dim = (g - 1) * r * r + 1;
    const int bound = 2 * dim + 1;
    detail::HNEngine engine(g, bound, Arity::univariate);
    const LaurentPoly one = LaurentPoly::constant(1);
    const LaurentPoly p =
        detail::trunc_mul(engine.ss(r, 1), one - LaurentPoly::monomial(1, 2), bound);
    if (p.coeff(bound) != 0)
        throw computation_error("hn_poincare_m1: truncation residue at rank " + std::to_string(r));
    if (p.is_zero() || p.degree() != 2 * dim || p.coeff(0) != 1)
        throw computation_error("hn_poincare_m1: degree check failed at rank " + std::to_string(r));
    return p;
}

/// Signed Hodge series h_{u,v} of the same space via the Hodge-refined HN
/// recursion.  The diagonal specialization u = v = t must reproduce the
/// sign-alternating Poincare polynomial; this is asserted.
inline LaurentPoly hn_hodge_m1(int r, int g) {
    require_genus(g);
    if (r < 1) throw usage_error("hn_hodge_m1: r >= 1 required");
    const int dim = (g - 1) * r * r + 1;
    const int bound = 2 * dim + 1;
    detail::HNEngine engine(g, bound, Arity::bivariate);
    const LaurentPoly one = LaurentPoly::constant(1, Arity::bivariate);
    const LaurentPoly h =
        detail::trunc_mul(engine.ss(r, 1), one - LaurentPoly::monomial2(1, 1, 1), bound);
    if (h.is_zero() || h.max_total_degree() > 2 * dim)
        throw computation_error("hn_hodge_m1: truncation residue at rank " + std::to_string(r));
    if (h.specialize_diagonal() != hn_poincare_m1(r, g).negate_vars())
        throw computation_error("hn_hodge_m1: diagonal specialization mismatch at rank " +
                                std::to_string(r));
    return h;
}

/// Poincare polynomial of the parabolic space: a P^{r-1}-bundle over the
/// degree-1 moduli space, so P(M_1(r)) * p(r; t^2).
inline LaurentPoly parabolic_poincare(int r, int g) {
    return hn_poincare_m1(r, g) * p_series(r).adams(2);
}

/// Smooth-space input table: Betti polynomials (and optional signed Hodge
/// polynomials) of M_1(r) per rank, either computed by the builtin HN
/// recursion or ingested from a user file.
struct SmoothTable {
    enum class Provenance { builtin_hn, user_file };

    int genus = 2;
    std::map<int, LaurentPoly> betti;
    std::map<int, LaurentPoly> hodge;
    Provenance provenance = Provenance::builtin_hn;

    bool covers(int r) const { return betti.count(r) != 0; }
    bool covers_hodge(int r) const { return hodge.count(r) != 0; }

    const LaurentPoly& betti_for(int r) const {
        auto it = betti.find(r);
        if (it == betti.end())
            throw usage_error("smooth table does not cover rank " + std::to_string(r));
        return it->second;
    }

    const LaurentPoly& hodge_for(int r) const {
        auto it = hodge.find(r);
        if (it == hodge.end())
            throw usage_error("smooth table has no Hodge entry for rank " + std::to_string(r));
        return it->second;
    }

    /// This table's entries override `base` where both are present.
    SmoothTable merged_over(const SmoothTable& base) const {
        if (base.genus != genus) throw usage_error("smooth table genus mismatch in merge");
        SmoothTable out = base;
        for (const auto& [r, p] : betti) out.betti[r] = p;
        for (const auto& [r, p] : hodge) out.hodge[r] = p;
        out.provenance = provenance;
        return out;
    }
};

namespace detail {

inline void reject(int rank, const std::string& check) {
    throw usage_error("smooth table: rank " + std::to_string(rank) + ": " + check + " violated");
}

inline void validate_betti_entry(int g, int rank, const LaurentPoly& p) {
    const int dim = (g - 1) * rank * rank + 1;
    if (p.arity() != Arity::univariate) reject(rank, "univariate Betti polynomial");
    if (p.is_zero() || p.coeff(0) != 1) reject(rank, "constant term 1");
    if (p.has_negative_coeff()) reject(rank, "nonnegative coefficients");
    if (p.min_exp() < 0) reject(rank, "nonnegative exponents");
    if (p.degree() != 2 * dim) reject(rank, "degree 2((g-1)r^2+1)");
    if (!p.is_palindromic(dim)) reject(rank, "palindromicity");
}

inline void validate_hodge_entry(int g, int rank, const LaurentPoly& h,
                                 const LaurentPoly* betti) {
    const int dim = (g - 1) * rank * rank + 1;
    if (h.arity() != Arity::bivariate) reject(rank, "bivariate Hodge polynomial");
    if (h.is_zero() || h.coeff2(0, 0) != 1) reject(rank, "constant term 1");
    if (h.max_total_degree() > 2 * dim) reject(rank, "total degree bound");
    if (h != h.swap_vars()) reject(rank, "u<->v symmetry");
    for (const auto& [e, c] : h.terms()) {
        if (e.a < 0 || e.b < 0) reject(rank, "nonnegative exponents");
        if ((e.total() % 2 == 0 && c < 0) || (e.total() % 2 != 0 && c > 0))
            reject(rank, "sign pattern (-1)^{p+q}");
    }
    if (betti && h.specialize_diagonal() != betti->negate_vars())
        reject(rank, "diagonal consistency with the Betti entry");
}

} // namespace detail

/// Table computed by the builtin HN recursion for ranks 1..max_rank.
inline SmoothTable builtin_smooth_table(int g, int max_rank, bool with_hodge = false) {
    require_genus(g);
    SmoothTable t;
    t.genus = g;
    t.provenance = SmoothTable::Provenance::builtin_hn;
    for (int r = 1; r <= max_rank; ++r) {
        t.betti[r] = hn_poincare_m1(r, g);
        if (with_hodge) t.hodge[r] = hn_hodge_m1(r, g);
    }
    return t;
}

/// Smooth-table JSON schema:
/// {"schema_version":1, "genus":g,
///  "entries":[{"rank":r, "kind":"betti"|"hodge", "poly": poly_json}]}.
/// Every invariant is re-validated on load; a violation names the offending
/// rank and check.
inline SmoothTable load_smooth_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("smooth table: cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw usage_error("smooth table: bad JSON in " + path.string() + ": " + e.what());
    }
    if (!j.contains("schema_version") || j["schema_version"] != 1)
        throw usage_error("smooth table: schema_version 1 required");
    if (!j.contains("genus") || !j["genus"].is_number_integer())
        throw usage_error("smooth table: integer genus required");
    SmoothTable t;
    t.genus = j["genus"].get<int>();
    require_genus(t.genus);
    t.provenance = SmoothTable::Provenance::user_file;
    if (!j.contains("entries") || !j["entries"].is_array())
        throw usage_error("smooth table: entries array required");
    for (const auto& entry : j["entries"]) {
        if (!entry.contains("rank") || !entry["rank"].is_number_integer())
            throw usage_error("smooth table: integer rank required");
        const int rank = entry["rank"].get<int>();
        if (rank < 1) throw usage_error("smooth table: rank >= 1 required");
        const std::string kind = entry.value("kind", "");
        if (!entry.contains("poly")) detail::reject(rank, "poly field");
        if (kind == "betti") {
            if (t.betti.count(rank)) detail::reject(rank, "unique betti entry");
            LaurentPoly p = poly_from_json(entry["poly"], Arity::univariate);
            detail::validate_betti_entry(t.genus, rank, p);
            t.betti.emplace(rank, std::move(p));
        } else if (kind == "hodge") {
            if (t.hodge.count(rank)) detail::reject(rank, "unique hodge entry");
            LaurentPoly p = poly_from_json(entry["poly"], Arity::bivariate);
            t.hodge.emplace(rank, std::move(p));
        } else {
            detail::reject(rank, "kind betti|hodge");
        }
    }
    // Hodge entries are checked after the loop so diagonal consistency sees
    // the Betti entry regardless of file order.
    for (const auto& [rank, h] : t.hodge) {
        const LaurentPoly* b = t.betti.count(rank) ? &t.betti.at(rank) : nullptr;
        detail::validate_hodge_entry(t.genus, rank, h, b);
    }
    return t;
}

/// JSON emission of a table in the load_smooth_table schema.
inline json smooth_table_to_json(const SmoothTable& t) {
    json entries = json::array();
    for (const auto& [r, p] : t.betti)
        entries.push_back(json{{"rank", r}, {"kind", "betti"}, {"poly", poly_to_json(p)}});
    for (const auto& [r, p] : t.hodge)
        entries.push_back(json{{"rank", r}, {"kind", "hodge"}, {"poly", poly_to_json(p)}});
    return json{{"schema_version", 1}, {"genus", t.genus}, {"entries", entries}};
}

} // namespace icmod
