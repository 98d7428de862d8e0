#pragma once

#include <map>
#include <utility>
#include <vector>

#include "icmod/laurent.hpp"

namespace icmod {

/// Truncated power series in q with LaurentPoly coefficients, exact modulo
/// q^{r_max+1}.  The truncation order is an explicit field, never implicit
/// global state.  Immutable in spirit; shareable across threads.
class QSeries {
public:
    explicit QSeries(int r_max, Arity ar = Arity::univariate)
        : r_max_(r_max), coeffs_(static_cast<std::size_t>(r_max) + 1, LaurentPoly::zero(ar)) {
        if (r_max < 0) throw usage_error("QSeries: r_max >= 0 required");
    }

    static QSeries one(int r_max, Arity ar = Arity::univariate) {
        QSeries s(r_max, ar);
        s.coeffs_[0] = LaurentPoly::constant(1, ar);
        return s;
    }

    int r_max() const { return r_max_; }
    Arity arity() const { return coeffs_[0].arity(); }

    const LaurentPoly& coeff(int r) const {
        check_index(r);
        return coeffs_[static_cast<std::size_t>(r)];
    }

    void set_coeff(int r, LaurentPoly p) {
        check_index(r);
        coeffs_[static_cast<std::size_t>(r)] = std::move(p);
    }

    bool operator==(const QSeries& o) const {
        return r_max_ == o.r_max_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const QSeries& o) const { return !(*this == o); }

    QSeries operator+(const QSeries& o) const {
        check_match(o);
        QSeries r = *this;
        for (int i = 0; i <= r_max_; ++i) r.coeffs_[i] += o.coeffs_[i];
        return r;
    }

    QSeries operator-(const QSeries& o) const {
        check_match(o);
        QSeries r = *this;
        for (int i = 0; i <= r_max_; ++i) r.coeffs_[i] -= o.coeffs_[i];
        return r;
    }

    /// Cauchy product truncated at r_max.
    QSeries operator*(const QSeries& o) const {
        check_match(o);
        QSeries r(r_max_, arity());
        for (int i = 0; i <= r_max_; ++i) {
            if (coeffs_[i].is_zero()) continue;
            for (int j = 0; i + j <= r_max_; ++j) {
                if (o.coeffs_[j].is_zero()) continue;
                r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
            }
        }
        return r;
    }

private:
    void check_index(int r) const {
        if (r < 0 || r > r_max_) throw usage_error("QSeries: q-degree out of range");
    }
    void check_match(const QSeries& o) const {
        if (r_max_ != o.r_max_) throw usage_error("QSeries: truncation order mismatch");
    }

    int r_max_;
    std::vector<LaurentPoly> coeffs_;
};

inline QSeries series_mul(const QSeries& a, const QSeries& b) { return a * b; }

namespace detail {

/// C(n, m) for arbitrary-precision n and small m; exact at every step.
inline Int binomial(const Int& n, int m) {
    Int c = 1;
    for (int i = 1; i <= m; ++i) {
        c *= n - (i - 1);
        c /= i;
    }
    return c;
}

/// Multiply acc by (1 - mono q^r)^{-a} truncated at acc.r_max().
/// a > 0 expands to an infinite (truncated) binomial series, a < 0 to the
/// finite binomial expansion of (1 - mono q^r)^{|a|}.
inline void mul_pleth_factor(QSeries& acc, const Exp& mono, const Int& a, int r) {
    const int r_max = acc.r_max();
    QSeries factor = QSeries::one(r_max, acc.arity());
    for (int m = 1; m * r <= r_max; ++m) {
        Int c;
        if (a > 0) {
            c = binomial(a - 1 + m, m); // coefficient of x^m in (1-x)^{-a}
        } else {
            if (m > -a) break; // finite expansion of (1-x)^{|a|}
            c = binomial(-a, m);
            if (m % 2 != 0) c = -c;
        }
        if (c == 0) continue;
        LaurentPoly term(acc.arity());
        term.add_term({mono.a * m, mono.b * m}, c);
        factor.set_coeff(m * r, factor.coeff(m * r) + term);
    }
    acc = acc * factor;
}

} // namespace detail

/// Plethystic exponential: Exp[a] = prod_{r>=1} prod_eta (1 - m^eta q^r)^{-a_{r,eta}}
/// truncated at q^{r_max}, where a_{r,eta} is the coefficient of the monomial
/// m^eta in the q^r coefficient of a.  Requires a zero constant term.
inline QSeries pleth_exp(const QSeries& a) {
    if (!a.coeff(0).is_zero())
        throw usage_error("pleth_exp: nonzero constant term");
    QSeries acc = QSeries::one(a.r_max(), a.arity());
    for (int r = 1; r <= a.r_max(); ++r)
        for (const auto& [mono, c] : a.coeff(r).terms())
            detail::mul_pleth_factor(acc, mono, c, r);
    return acc;
}

/// Plethystic logarithm, the inverse of pleth_exp on series with constant
/// term 1.  Solved degreewise: A_r = f_r - [q^r] Exp[sum_{s<r} A_s q^s],
/// valid because Exp[A_r q^r] = 1 + A_r q^r + O(q^{2r}).
inline QSeries pleth_log(const QSeries& f) {
    if (f.coeff(0) != LaurentPoly::constant(1, f.arity()))
        throw usage_error("pleth_log: constant term must be 1");
    QSeries a(f.r_max(), f.arity());
    for (int r = 1; r <= f.r_max(); ++r) {
        const QSeries e = pleth_exp(a);
        a.set_coeff(r, f.coeff(r) - e.coeff(r));
    }
    return a;
}

/// Bigraded dimension table: (t-degree, q-degree >= 1) -> dimension.
struct BigradedDims {
    std::map<std::pair<int, int>, int> dims;

    void add(int t_deg, int q_deg, int d) {
        if (q_deg < 1) throw usage_error("BigradedDims: q-degree >= 1 required");
        if (d < 0) throw usage_error("BigradedDims: dimension >= 0 required");
        if (d > 0) dims[{t_deg, q_deg}] += d;
    }

    int total_dim() const {
        int s = 0;
        for (const auto& [k, d] : dims) s += d;
        return s;
    }

    /// Hilb_{-t,q}: sum over generators of (-t)^i q^j.
    QSeries signed_hilbert(int r_max) const {
        QSeries s(r_max);
        for (const auto& [key, d] : dims) {
            const auto [i, j] = key;
            if (j > r_max) continue;
            const Int c = (i % 2 != 0) ? Int(-d) : Int(d);
            s.set_coeff(j, s.coeff(j) + LaurentPoly::monomial(c, i));
        }
        return s;
    }
};

/// Brute-force bigraded Hilbert series of Sym(even part) (x) Lambda(odd part)
/// -- parity taken in the t-degree -- computed by explicit enumeration of
/// monomials in the generators, then the sign substitution t -> -t.  By
/// enumeration it agrees with pleth_exp(signed_hilbert()) exactly; that is
/// the content of the free graded-commutative Hilbert series lemma and is
/// what the tests pin down.
inline QSeries graded_invariant_oracle(const BigradedDims& dims, int r_max) {
    if (r_max < 0) throw usage_error("graded_invariant_oracle: r_max >= 1 required");
    // Expand the table into an explicit generator list.
    std::vector<std::pair<int, int>> gens; // (t_deg, q_deg) per generator
    for (const auto& [key, d] : dims.dims)
        for (int c = 0; c < d; ++c) gens.push_back(key);

    std::map<std::pair<int, int>, Int> alg; // (t_deg, q_deg) -> dimension
    // Depth-first multiset/subset enumeration: odd generators appear with
    // exponent 0 or 1, even ones with any exponent fitting the q-budget.
    auto enumerate = [&](auto&& self, std::size_t idx, int t_deg, int q_deg) -> void {
        if (idx == gens.size()) {
            alg[{t_deg, q_deg}] += 1;
            return;
        }
        const auto [ti, qi] = gens[idx];
        const bool odd = ti % 2 != 0;
        const int max_e = odd ? 1 : (r_max - q_deg) / qi;
        for (int e = 0; e <= max_e && q_deg + e * qi <= r_max; ++e)
            self(self, idx + 1, t_deg + e * ti, q_deg + e * qi);
    };
    enumerate(enumerate, 0, 0, 0);

    QSeries s(r_max);
    for (const auto& [key, d] : alg) {
        const auto [i, j] = key;
        const Int c = (i % 2 != 0) ? Int(-d) : d;
        s.set_coeff(j, s.coeff(j) + LaurentPoly::monomial(c, i));
    }
    return s;
}

} // namespace icmod
