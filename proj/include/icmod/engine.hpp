#pragma once

#include <map>
#include <string>
#include <vector>

#include "icmod/qseries.hpp"
#include "icmod/smooth.hpp"

namespace icmod {

namespace detail {

/// Sign of (-t)^{(1-g)s^2}: -1 exactly when (g-1)s^2 is odd.
inline int weight_sign(int g, int s) {
    const long long n = static_cast<long long>(g - 1) * s * s;
    return (n % 2 == 0) ? 1 : -1;
}

inline int weight_exponent(int g, int s) { return (1 - g) * s * s; }

/// p(s; w) read as a polynomial in the product uv.
inline LaurentPoly p_series_uv(int s) {
    LaurentPoly p(Arity::bivariate);
    for (int j = 0; j < s; ++j) p.add_term({j, j}, 1);
    return p;
}

/// Exact division of a bivariate polynomial by a polynomial in w = uv,
/// class by class in the difference p - q (which multiplication by powers
/// of uv preserves).
inline LaurentPoly exact_div_uv(const LaurentPoly& a, const LaurentPoly& b_in_w) {
    if (a.arity() != Arity::bivariate) throw usage_error("exact_div_uv: bivariate dividend");
    LaurentPoly b(Arity::univariate);
    for (const auto& [e, c] : b_in_w.terms()) {
        if (e.a != e.b) throw usage_error("exact_div_uv: divisor must be a polynomial in uv");
        b.add_term({e.a, 0}, c);
    }
    std::map<int, LaurentPoly> classes; // (p - q) -> polynomial in w = min(p, q)
    for (const auto& [e, c] : a.terms()) {
        const int delta = e.a - e.b;
        auto [it, inserted] = classes.try_emplace(delta, Arity::univariate);
        it->second.add_term({std::min(e.a, e.b), 0}, c);
    }
    LaurentPoly out(Arity::bivariate);
    for (const auto& [delta, cls] : classes) {
        const LaurentPoly q = exact_div(cls, b);
        for (const auto& [e, c] : q.terms())
            out.add_term({e.a + std::max(delta, 0), e.a + std::max(-delta, 0)}, c);
    }
    return out;
}

inline void check_table(int g, const SmoothTable& smooth) {
    require_genus(g);
    if (smooth.genus != g)
        throw usage_error("smooth table genus " + std::to_string(smooth.genus) +
                          " does not match requested genus " + std::to_string(g));
}

/// Structural facts about every true intersection Poincare polynomial;
/// returns a list of violated checks (empty when clean).
inline std::vector<std::string> ip_defects(const LaurentPoly& ip, int g, int s) {
    const int dim = (g - 1) * s * s + 1;
    std::vector<std::string> out;
    if (ip.is_zero() || ip.coeff(0) != 1) out.push_back("constant term 1");
    if (ip.has_negative_coeff()) out.push_back("nonnegative coefficients");
    if (!ip.is_zero() && (ip.min_exp() < 0 || ip.degree() != 2 * dim))
        out.push_back("degree 2((g-1)r^2+1)");
    if (!ip.is_zero() && !ip.is_palindromic(dim)) out.push_back("palindromicity");
    return out;
}

} // namespace detail

/// The signed left-hand-side series of the main recursion:
///   1 + sum_s P_{-t}(P^{s-1}) P_{-t}(M_1(s)) (-t)^{(1-g)s^2} q^s,
/// with P_{-t}(P^{s-1}) = p(s; t^2) (even, hence sign-invariant).
inline QSeries build_signed_lhs(int r_max, int g, const SmoothTable& smooth) {
    detail::check_table(g, smooth);
    if (r_max < 1) throw usage_error("build_signed_lhs: r_max >= 1 required");
    QSeries lhs(r_max);
    lhs.set_coeff(0, LaurentPoly::constant(1));
    for (int s = 1; s <= r_max; ++s) {
        LaurentPoly coeff = p_series(s).adams(2) * smooth.betti_for(s).negate_vars();
        coeff = coeff * LaurentPoly::monomial(detail::weight_sign(g, s),
                                              detail::weight_exponent(g, s));
        lhs.set_coeff(s, std::move(coeff));
    }
    return lhs;
}

/// Solved state of the recursion: the signed LHS series together with the
/// recovered IP_t(M_0(s)) per rank (natural variable, signs undone).
struct SignedSeriesBundle {
    int genus = 2;
    int r_max = 1;
    QSeries lhs{1};
    std::map<int, LaurentPoly> solved;
};

/// Solve the plethystic recursion through q^{r_max}: take Log of the LHS,
/// strip the bracket factor p(s; t^2) (-t)^{(1-g)s^2} off each coefficient
/// by exact division, undo the sign substitution and check the structural
/// facts about intersection cohomology.  Any failure carries the rank.
inline SignedSeriesBundle solve_ip_series(int r_max, int g, const SmoothTable& smooth) {
    SignedSeriesBundle bundle;
    bundle.genus = g;
    bundle.r_max = r_max;
    bundle.lhs = build_signed_lhs(r_max, g, smooth);
    const QSeries brackets = pleth_log(bundle.lhs);
    for (int s = 1; s <= r_max; ++s) {
        const LaurentPoly unshifted =
            brackets.coeff(s) * LaurentPoly::monomial(detail::weight_sign(g, s),
                                                      -detail::weight_exponent(g, s));
        LaurentPoly ip_signed;
        try {
            ip_signed = exact_div(unshifted, p_series(s).adams(2));
        } catch (const computation_error&) {
            throw computation_error("ip_m0: inexact division by p(" + std::to_string(s) +
                                    "; t^2) at rank " + std::to_string(s));
        }
        LaurentPoly ip = ip_signed.negate_vars();
        const auto defects = detail::ip_defects(ip, g, s);
        if (!defects.empty())
            throw computation_error("ip_m0: rank " + std::to_string(s) + ": " + defects.front());
        bundle.solved.emplace(s, std::move(ip));
    }
    return bundle;
}

/// IP_t(M_0(r)) by the plethystic recursion.
inline LaurentPoly ip_m0(int r, int g, const SmoothTable& smooth) {
    if (r < 1) throw usage_error("ip_m0: r >= 1 required");
    return solve_ip_series(r, g, smooth).solved.at(r);
}

/// Rank-2 closed form:
///   IP_{-t}(M_0(2)) = P_{-t}(M_1(2))
///                   - t^{2(g-1)} [ (1-t)^{4g} + (-1)^{g-1} (1-t^2)^{2g} ] / (2 (1+t^2)),
/// with the division exact over the integers (asserted).  Returns the
/// sign-undone polynomial.
inline LaurentPoly ip_m0_rank2_closed(int g, const SmoothTable& smooth) {
    detail::check_table(g, smooth);
    const LaurentPoly one = LaurentPoly::constant(1);
    const LaurentPoly t = LaurentPoly::t();
    LaurentPoly bracket = (one - t).pow(4 * g);
    const LaurentPoly even_part = (one - t.pow(2)).pow(2 * g);
    bracket = (g % 2 != 0) ? bracket + even_part : bracket - even_part;
    const LaurentPoly den = (one + t.pow(2)) * Int(2);
    LaurentPoly corr;
    try {
        corr = exact_div(bracket.shifted(2 * (g - 1)), den);
    } catch (const computation_error&) {
        throw computation_error("ip_m0_rank2_closed: division by 2(1+t^2) inexact");
    }
    return (smooth.betti_for(2).negate_vars() - corr).negate_vars();
}

namespace detail {

/// Tate-twist exponent of the rank-s term of the Hodge recursion.  The
/// univariate degree shift t^{(1-g)s^2} corresponds to the half twist
/// (uv)^{(1-g)s^2/2}, which is not integral when (g-1)s^2 is odd; the
/// s-linear regauging by (uv)^{(1-g)s/2} (absorbable into q, so it does not
/// change the solved polynomials) makes every exponent integral.  On the
/// diagonal u = v = t the regauged recursion differs from the univariate one
/// by exactly the substitution q -> t^{g-1} q, so purity of the diagonal is
/// an identity rather than a coincidence.
inline int hodge_twist_exponent(int g, int s) { return (1 - g) * s * (s + 1) / 2; }

} // namespace detail

/// Hodge refinement: the same degreewise plethystic scheme in (u, v) with
/// sign-and-Tate-twist weights (see hodge_twist_exponent) and
/// h_{u,v}(P^{s-1}) = sum_{j<s} (uv)^j.  Returns Ih_{u,v}(M_0(r)) with signs
/// undone, so every coefficient is dim IH^{p,q}.  Asserts u<->v symmetry
/// and, by purity, that the diagonal u = v = t of the signed result equals
/// the signed univariate answer.
inline LaurentPoly ih_hodge_m0(int r, int g, const SmoothTable& smooth) {
    detail::check_table(g, smooth);
    if (r < 1) throw usage_error("ih_hodge_m0: r >= 1 required");
    QSeries lhs(r, Arity::bivariate);
    lhs.set_coeff(0, LaurentPoly::constant(1, Arity::bivariate));
    for (int s = 1; s <= r; ++s) {
        const int w = detail::hodge_twist_exponent(g, s);
        LaurentPoly coeff = detail::p_series_uv(s) * smooth.hodge_for(s);
        coeff = coeff * LaurentPoly::monomial2(detail::weight_sign(g, s), w, w);
        lhs.set_coeff(s, std::move(coeff));
    }
    const QSeries brackets = pleth_log(lhs);
    const SignedSeriesBundle univariate = solve_ip_series(r, g, smooth);
    LaurentPoly result(Arity::bivariate);
    for (int s = 1; s <= r; ++s) {
        const int w = detail::hodge_twist_exponent(g, s);
        const LaurentPoly unshifted =
            brackets.coeff(s) * LaurentPoly::monomial2(detail::weight_sign(g, s), -w, -w);
        LaurentPoly ih_signed;
        try {
            ih_signed = detail::exact_div_uv(unshifted, detail::p_series_uv(s));
        } catch (const computation_error&) {
            throw computation_error("ih_hodge_m0: inexact division at rank " + std::to_string(s));
        }
        if (ih_signed != ih_signed.swap_vars())
            throw computation_error("ih_hodge_m0: u<->v asymmetry at rank " + std::to_string(s));
        if (ih_signed.specialize_diagonal() != univariate.solved.at(s).negate_vars())
            throw computation_error("ih_hodge_m0: diagonal purity mismatch at rank " +
                                    std::to_string(s));
        if (s == r) {
            // undo signs: dim IH^{p,q} = (-1)^{p+q} [coefficient]
            for (const auto& [e, c] : ih_signed.terms()) {
                const Int d = (e.total() % 2 != 0) ? Int(-c) : c;
                if (d < 0)
                    throw computation_error("ih_hodge_m0: negative Hodge dimension at rank " +
                                            std::to_string(s));
                result.add_term(e, d);
            }
        }
    }
    return result;
}

struct GlobalReport {
    struct Entry {
        int rank = 0;
        bool pass = false;
        std::string detail; // empty when clean
    };
    std::vector<Entry> entries;
    bool all_pass = true;
};

/// End-to-end consistency check: solve the recursion, rebuild the bracket
/// series from the recovered polynomials, re-apply Exp and require exact
/// equality with the LHS series degree by degree.  Rank entries also carry
/// the structural checks; failures are reported, never thrown.
inline GlobalReport verify_global(int r_max, int g, const SmoothTable& smooth) {
    detail::check_table(g, smooth);
    GlobalReport report;
    const QSeries lhs = build_signed_lhs(r_max, g, smooth);
    const QSeries brackets = pleth_log(lhs);
    QSeries rebuilt(r_max);
    rebuilt.set_coeff(0, LaurentPoly::zero());
    std::vector<std::string> rank_issues(static_cast<std::size_t>(r_max) + 1);
    for (int s = 1; s <= r_max; ++s) {
        auto& issues = rank_issues[static_cast<std::size_t>(s)];
        const LaurentPoly unshifted =
            brackets.coeff(s) * LaurentPoly::monomial(detail::weight_sign(g, s),
                                                      -detail::weight_exponent(g, s));
        const DivRem dr = div_rem(unshifted, p_series(s).adams(2));
        if (!dr.rem.is_zero()) issues += "inexact bracket division; ";
        const LaurentPoly ip = dr.quot.negate_vars();
        for (const auto& defect : detail::ip_defects(ip, g, s)) issues += defect + "; ";
        // Re-pack the bracket coefficient from the recovered polynomial.
        LaurentPoly repacked = p_series(s).adams(2) * ip.negate_vars();
        repacked = repacked * LaurentPoly::monomial(detail::weight_sign(g, s),
                                                    detail::weight_exponent(g, s));
        rebuilt.set_coeff(s, std::move(repacked));
    }
    const QSeries roundtrip = pleth_exp(rebuilt);
    for (int s = 1; s <= r_max; ++s) {
        auto& issues = rank_issues[static_cast<std::size_t>(s)];
        if (roundtrip.coeff(s) != lhs.coeff(s)) issues += "Exp roundtrip mismatch; ";
        GlobalReport::Entry e;
        e.rank = s;
        e.detail = issues;
        e.pass = issues.empty();
        report.all_pass = report.all_pass && e.pass;
        report.entries.push_back(std::move(e));
    }
    return report;
}

/// Symmetrized Poincare polynomial t^{-dim} P_t, invariant under t -> 1/t
/// for palindromic P of degree 2 dim.
inline LaurentPoly symmetrized(const LaurentPoly& poly, int dim) {
    if (poly.arity() != Arity::univariate)
        throw usage_error("symmetrized: univariate input required");
    if (dim < 0) throw usage_error("symmetrized: dim >= 0 required");
    return poly.shifted(-dim);
}

} // namespace icmod
