#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "icmod/errors.hpp"

namespace icmod {

using Int = boost::multiprecision::cpp_int;

enum class Arity { univariate, bivariate };

/// Monomial exponent.  Univariate polynomials use `a` only (b == 0);
/// bivariate ones use (a, b) = (p, q) for u^p v^q.  Ordered
/// lexicographically, which fixes the canonical term order everywhere
/// (serialization, division, iteration).
struct Exp {
    int a = 0;
    int b = 0;
    auto operator<=>(const Exp&) const = default;
    int total() const { return a + b; }
};

/// Exact integer-coefficient Laurent polynomial in one variable (t) or two
/// (u, v).  Invariants: no stored coefficient is zero; univariate terms have
/// b == 0.  Values are immutable in spirit: every operation returns a fresh
/// polynomial, so they are safely shareable across threads.
class LaurentPoly {
public:
    LaurentPoly() : arity_(Arity::univariate) {}
    explicit LaurentPoly(Arity ar) : arity_(ar) {}

    static LaurentPoly zero(Arity ar = Arity::univariate) { return LaurentPoly(ar); }

    static LaurentPoly constant(Int c, Arity ar = Arity::univariate) {
        LaurentPoly p(ar);
        p.add_term({0, 0}, std::move(c));
        return p;
    }

    static LaurentPoly monomial(Int c, int e) {
        LaurentPoly p(Arity::univariate);
        p.add_term({e, 0}, std::move(c));
        return p;
    }

    static LaurentPoly monomial2(Int c, int pu, int pv) {
        LaurentPoly p(Arity::bivariate);
        p.add_term({pu, pv}, std::move(c));
        return p;
    }

    /// The variable t.
    static LaurentPoly t() { return monomial(1, 1); }
    static LaurentPoly u() { return monomial2(1, 1, 0); }
    static LaurentPoly v() { return monomial2(1, 0, 1); }
    /// The product uv as a bivariate monomial, exponent n (may be negative).
    static LaurentPoly uv_pow(int n) { return monomial2(1, n, n); }

    Arity arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exp{0, 0});
    }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exp, Int>& terms() const { return terms_; }

    Int coeff(int e) const { return coeff_at({e, 0}); }
    Int coeff2(int pu, int pv) const { return coeff_at({pu, pv}); }
    Int coeff_at(const Exp& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Int(0) : it->second;
    }

    /// Smallest/largest exponent of a nonzero univariate polynomial.
    int min_exp() const { require_nonzero("min_exp"); return terms_.begin()->first.a; }
    int max_exp() const { require_nonzero("max_exp"); return terms_.rbegin()->first.a; }
    int degree() const { return max_exp(); }

    /// Largest a+b over the support (any arity).
    int max_total_degree() const {
        if (terms_.empty()) throw usage_error("max_total_degree: zero polynomial");
        int best = terms_.begin()->first.total();
        for (const auto& [e, c] : terms_) best = std::max(best, e.total());
        return best;
    }

    Int eval_at_one() const {
        Int s = 0;
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    bool operator==(const LaurentPoly& o) const {
        if (is_constant() && o.is_constant()) return coeff_at({0, 0}) == o.coeff_at({0, 0});
        return arity_ == o.arity_ && terms_ == o.terms_;
    }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly operator-() const {
        LaurentPoly r(arity_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    LaurentPoly operator+(const LaurentPoly& o) const {
        auto [a, b] = promoted(*this, o);
        LaurentPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }

    LaurentPoly operator*(const LaurentPoly& o) const {
        auto [a, b] = promoted(*this, o);
        LaurentPoly r(a.arity_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term({ea.a + eb.a, ea.b + eb.b}, ca * cb);
        return r;
    }

    LaurentPoly operator*(const Int& s) const {
        LaurentPoly r(arity_);
        if (s == 0) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) { *this = *this + o; return *this; }
    LaurentPoly& operator-=(const LaurentPoly& o) { *this = *this - o; return *this; }
    LaurentPoly& operator*=(const LaurentPoly& o) { *this = *this * o; return *this; }

    /// Integer-exponent power.  Negative exponents are only defined for
    /// monomials with coefficient +/-1 (units of the Laurent ring).
    LaurentPoly pow(int n) const {
        if (n < 0) {
            if (terms_.size() != 1) throw usage_error("pow: negative power of a non-monomial");
            const auto& [e, c] = *terms_.begin();
            if (c != 1 && c != -1) throw usage_error("pow: negative power of a non-unit");
            LaurentPoly base(arity_);
            base.add_term({-e.a, -e.b}, c); // c == 1/c for units
            return base.pow(-n);
        }
        LaurentPoly acc = LaurentPoly::constant(1, arity_);
        LaurentPoly base = *this;
        while (n > 0) {
            if (n & 1) acc = acc * base;
            base = (n >>= 1) ? base * base : base;
        }
        return acc;
    }

    /// Substitute t -> t^n (exponents scaled by n, componentwise for
    /// bivariate); coefficients unchanged.
    LaurentPoly adams(int n) const {
        if (n < 1) throw usage_error("adams: n >= 1 required");
        LaurentPoly r(arity_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(Exp{e.a * n, e.b * n}, c);
        return r;
    }

    /// Substitute t -> -t (resp. (u,v) -> (-u,-v)): negate coefficients of
    /// odd (total) degree.
    LaurentPoly negate_vars() const {
        LaurentPoly r(arity_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, (e.total() % 2 != 0) ? -c : c);
        return r;
    }

    /// Swap u <-> v.
    LaurentPoly swap_vars() const {
        if (arity_ != Arity::bivariate) throw usage_error("swap_vars: bivariate input required");
        LaurentPoly r(Arity::bivariate);
        for (const auto& [e, c] : terms_) r.terms_.emplace(Exp{e.b, e.a}, c);
        return r;
    }

    /// Substitute u = v = t; exponent (p, q) maps to p + q.
    LaurentPoly specialize_diagonal() const {
        if (arity_ != Arity::bivariate)
            throw usage_error("specialize_diagonal: bivariate input required");
        LaurentPoly r(Arity::univariate);
        for (const auto& [e, c] : terms_) r.add_term({e.total(), 0}, c);
        return r;
    }

    /// Multiply by t^k (k may be negative); shifts all exponents.
    LaurentPoly shifted(int k) const {
        if (arity_ != Arity::univariate) throw usage_error("shifted: univariate input required");
        LaurentPoly r(arity_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(Exp{e.a + k, 0}, c);
        return r;
    }

    /// Substitute t -> t - 1 and expand.  Requires nonnegative exponents.
    LaurentPoly compose_t_minus_one() const {
        if (arity_ != Arity::univariate)
            throw usage_error("compose_t_minus_one: univariate input required");
        if (is_zero()) return *this;
        if (min_exp() < 0)
            throw computation_error("compose_t_minus_one: negative exponent in input");
        const LaurentPoly tm1 = t() - constant(1);
        LaurentPoly acc = zero();
        for (int e = max_exp(); e >= 0; --e) acc = acc * tm1 + constant(coeff(e));
        return acc;
    }

    /// True iff coeff(center - j) == coeff(center + j) for all j.
    bool is_palindromic(int center) const {
        if (arity_ != Arity::univariate)
            throw usage_error("is_palindromic: univariate input required");
        for (const auto& [e, c] : terms_)
            if (c != coeff(2 * center - e.a)) return false;
        return true;
    }

    /// True iff coeff(e) == coeff(pivot - e) for all e (mirror about pivot/2,
    /// which may be a half-integer).
    bool is_mirror_symmetric(int pivot) const {
        if (arity_ != Arity::univariate)
            throw usage_error("is_mirror_symmetric: univariate input required");
        for (const auto& [e, c] : terms_)
            if (c != coeff(pivot - e.a)) return false;
        return true;
    }

    bool has_negative_coeff() const {
        for (const auto& [e, c] : terms_)
            if (c < 0) return true;
        return false;
    }

    /// Drop terms of total degree above `bound` (truncated-series helper).
    LaurentPoly truncated_total(int bound) const {
        LaurentPoly r(arity_);
        for (const auto& [e, c] : terms_)
            if (e.total() <= bound) r.terms_.emplace(e, c);
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Int a = c < 0 ? Int(-c) : c;
            os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
            first = false;
            const bool unit_c = (a == 1) && !(e == Exp{0, 0});
            if (!unit_c) os << a.str();
            if (arity_ == Arity::univariate) {
                if (e.a != 0) {
                    if (!unit_c) os << "*";
                    os << "t";
                    if (e.a != 1) os << "^" << e.a;
                }
            } else {
                bool need_star = !unit_c;
                if (e.a != 0) {
                    if (need_star) os << "*";
                    os << "u";
                    if (e.a != 1) os << "^" << e.a;
                    need_star = true;
                }
                if (e.b != 0) {
                    if (need_star) os << "*";
                    os << "v";
                    if (e.b != 1) os << "^" << e.b;
                }
            }
        }
        return os.str();
    }

    void add_term(const Exp& e, Int c) {
        if (arity_ == Arity::univariate && e.b != 0)
            throw usage_error("univariate polynomial cannot hold a v-exponent");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(e, std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

private:
    void require_nonzero(const char* who) const {
        if (terms_.empty()) throw usage_error(std::string(who) + ": zero polynomial");
        if (arity_ != Arity::univariate)
            throw usage_error(std::string(who) + ": univariate input required");
    }

    /// Constants mix freely with either arity; anything else must match.
    static std::pair<LaurentPoly, LaurentPoly> promoted(const LaurentPoly& x,
                                                        const LaurentPoly& y) {
        if (x.arity_ == y.arity_) return {x, y};
        if (x.is_constant()) {
            LaurentPoly xx(y.arity_);
            for (const auto& [e, c] : x.terms_) xx.terms_.emplace(e, c);
            return {xx, y};
        }
        if (y.is_constant()) {
            LaurentPoly yy(x.arity_);
            for (const auto& [e, c] : y.terms_) yy.terms_.emplace(e, c);
            return {x, yy};
        }
        throw usage_error("variable arity mismatch in polynomial arithmetic");
    }

    Arity arity_;
    std::map<Exp, Int> terms_;
};

inline LaurentPoly operator*(const Int& s, const LaurentPoly& p) { return p * s; }

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

/// Quotient and remainder of univariate Laurent division.  The quotient is
/// built top-down; a division step whose leading coefficient is not divisible
/// stops early and leaves the rest in the remainder.
struct DivRem {
    LaurentPoly quot;
    LaurentPoly rem;
};

inline DivRem div_rem(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.arity() != Arity::univariate || b.arity() != Arity::univariate)
        throw usage_error("div_rem: univariate inputs required");
    if (b.is_zero()) throw usage_error("div_rem: division by zero");
    if (a.is_zero()) return {LaurentPoly::zero(), LaurentPoly::zero()};

    // Shift both operands to ordinary polynomials, long-divide, shift back:
    // a = t^amin A, b = t^bmin B, A = B Q + R  =>  a = b (t^{amin-bmin} Q) + t^amin R.
    const int amin = a.min_exp();
    const int bmin = b.min_exp();
    LaurentPoly rem = a.shifted(-amin);
    const LaurentPoly B = b.shifted(-bmin);
    const int db = B.max_exp();
    const Int lead = B.coeff(db);
    LaurentPoly quot = LaurentPoly::zero();
    while (!rem.is_zero() && rem.max_exp() >= db) {
        Int qc = rem.coeff(rem.max_exp());
        if (qc % lead != 0) break; // cannot stay integral: inexact
        qc /= lead;
        const LaurentPoly mono = LaurentPoly::monomial(qc, rem.max_exp() - db);
        quot += mono;
        rem -= mono * B;
    }
    return {quot.shifted(amin - bmin), rem.shifted(amin)};
}

/// Exact univariate division; throws computation_error when inexact.
inline LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
    DivRem dr = div_rem(a, b);
    if (!dr.rem.is_zero())
        throw computation_error("exact_div: inexact polynomial division");
    return dr.quot;
}

/// 1 + t + ... + t^{n-1}.
inline LaurentPoly p_series(int n) {
    if (n < 1) throw usage_error("p_series: n >= 1 required");
    LaurentPoly r;
    for (int i = 0; i < n; ++i) r.add_term({i, 0}, 1);
    return r;
}

/// Gauss (q-)binomial coefficient in the variable t via the q-Pascal
/// recursion [m, n] = [m-1, n-1] + t^n [m-1, n].  Returns 0 when n > m.
inline LaurentPoly gauss_binomial(int m, int n) {
    if (n < 0 || m < 0) throw usage_error("gauss_binomial: nonnegative arguments required");
    if (n > m) return LaurentPoly::zero();
    std::vector<LaurentPoly> row(static_cast<std::size_t>(n) + 1, LaurentPoly::zero());
    row[0] = LaurentPoly::constant(1);
    for (int mm = 1; mm <= m; ++mm)
        for (int nn = std::min(n, mm); nn >= 1; --nn)
            row[nn] = row[nn - 1] + row[nn].shifted(nn);
    return row[n];
}

} // namespace icmod
