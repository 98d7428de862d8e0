#include <catch2/catch_amalgamated.hpp>

#include "icmod/laurent.hpp"
#include "test_util.hpp"

using namespace icmod;
using testutil::random_poly;

namespace {
const LaurentPoly one = LaurentPoly::constant(1);
const LaurentPoly t = LaurentPoly::t();

LaurentPoly parse_simple(std::initializer_list<std::pair<int, int>> tm) {
    LaurentPoly p;
    for (auto [e, c] : tm) p.add_term({e, 0}, c);
    return p;
}
} // namespace

TEST_CASE("ring operations", "[laurent]") {
    CHECK((one + t) * (one - t) == parse_simple({{0, 1}, {2, -1}}));
    CHECK((LaurentPoly::monomial(1, -1) + one) * t == one + t);
    CHECK((one - t).pow(4) == parse_simple({{0, 1}, {1, -4}, {2, 6}, {3, -4}, {4, 1}}));

    SECTION("arity mismatch is rejected") {
        CHECK_THROWS_AS(t * LaurentPoly::u(), usage_error);
        CHECK_NOTHROW(LaurentPoly::constant(3) * LaurentPoly::u());
    }

    SECTION("scalar multiply") {
        CHECK((one + t) * Int(5) == parse_simple({{0, 5}, {1, 5}}));
        CHECK(((one + t) * Int(0)).is_zero());
    }
}

TEST_CASE("ring axioms on random inputs", "[laurent][property]") {
    testutil::Rng rng(0xC0FFEE);
    for (int it = 0; it < 50; ++it) {
        auto a = random_poly(rng, -3, 4, 9);
        auto b = random_poly(rng, -2, 3, 9);
        auto c = random_poly(rng, -4, 2, 9);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (b + c) == (a + b) + c);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("p_series", "[laurent]") {
    CHECK(p_series(1) == one);
    CHECK(p_series(3) == parse_simple({{0, 1}, {1, 1}, {2, 1}}));
    CHECK(p_series(2).adams(2) == one + t * t); // Poincare polynomial of P^1
    CHECK_THROWS_AS(p_series(0), usage_error);
    for (int n = 1; n <= 12; ++n) CHECK(p_series(n).eval_at_one() == n);
}

TEST_CASE("gauss_binomial", "[laurent]") {
    CHECK(gauss_binomial(3, 1) == p_series(3));
    CHECK(gauss_binomial(7, 0) == one);
    CHECK(gauss_binomial(4, 2) == parse_simple({{0, 1}, {1, 1}, {2, 2}, {3, 1}, {4, 1}}));
    CHECK(gauss_binomial(2, 3).is_zero());

    SECTION("matches the defining rational expression via exact division") {
        for (int m = 0; m <= 8; ++m) {
            for (int n = 0; n <= m; ++n) {
                LaurentPoly num = one;
                LaurentPoly den = one;
                for (int i = 0; i < n; ++i) {
                    num *= one - LaurentPoly::monomial(1, m - i);
                    den *= one - LaurentPoly::monomial(1, i + 1);
                }
                CHECK(gauss_binomial(m, n) == exact_div(num, den));
            }
        }
    }

    SECTION("palindromic: coeff(e) == coeff(n(m-n) - e)") {
        for (int m = 0; m <= 8; ++m)
            for (int n = 0; n <= m; ++n)
                CHECK(gauss_binomial(m, n).is_mirror_symmetric(n * (m - n)));
    }

    SECTION("nonnegative coefficients") {
        for (int m = 0; m <= 8; ++m)
            for (int n = 0; n <= m; ++n) CHECK_FALSE(gauss_binomial(m, n).has_negative_coeff());
    }
}

TEST_CASE("adams substitution", "[laurent]") {
    CHECK((one + t).adams(2) == one + LaurentPoly::monomial(1, 2));
    CHECK(LaurentPoly::monomial(1, -1).adams(3) == LaurentPoly::monomial(1, -3));
    testutil::Rng rng(42);
    for (int it = 0; it < 20; ++it) {
        auto a = random_poly(rng, -3, 5, 9);
        CHECK(a.adams(2).adams(3) == a.adams(6));
        CHECK(a.adams(1) == a);
    }
    CHECK_THROWS_AS(t.adams(0), usage_error);
}

TEST_CASE("is_palindromic", "[laurent]") {
    CHECK(parse_simple({{0, 1}, {1, 2}, {2, 1}}).is_palindromic(1));
    CHECK_FALSE(parse_simple({{0, 1}, {3, 1}}).is_palindromic(1));
    for (int g = 2; g <= 5; ++g) CHECK((one + t).pow(2 * g).is_palindromic(g));
}

TEST_CASE("specialize_diagonal", "[laurent]") {
    const LaurentPoly u = LaurentPoly::u();
    const LaurentPoly v = LaurentPoly::v();
    CHECK(((one - u) * (one - v)).specialize_diagonal() == (one - t).pow(2));
    CHECK((u * v).specialize_diagonal() == LaurentPoly::monomial(1, 2));
    for (int g = 2; g <= 4; ++g)
        CHECK(((one - u).pow(g) * (one - v).pow(g)).specialize_diagonal() == (one - t).pow(2 * g));
    CHECK_THROWS_AS(t.specialize_diagonal(), usage_error);
}

TEST_CASE("exact division", "[laurent]") {
    SECTION("quotient recovers a factor") {
        testutil::Rng rng(7);
        for (int it = 0; it < 30; ++it) {
            auto a = random_poly(rng, -2, 4, 6);
            auto b = random_poly(rng, -1, 3, 6);
            if (b.is_zero()) continue;
            CHECK(exact_div(a * b, b) == a);
        }
    }
    SECTION("inexact division throws") {
        CHECK_THROWS_AS(exact_div(t + one, t - one), computation_error);
        CHECK_THROWS_AS(exact_div(parse_simple({{0, 3}}), parse_simple({{0, 2}})), computation_error);
    }
    SECTION("div_rem identity a = b q + r") {
        testutil::Rng rng(11);
        for (int it = 0; it < 30; ++it) {
            auto a = random_poly(rng, -3, 5, 9);
            auto b = random_poly(rng, 0, 2, 3);
            if (b.is_zero()) continue;
            auto dr = div_rem(a, b);
            CHECK(b * dr.quot + dr.rem == a);
        }
    }
}

TEST_CASE("Cauchy binomial theorem", "[laurent]") {
    // prod_{k=0}^{m-1} (1 + t^k z) == sum_n t^{n(n-1)/2} [m,n]_t z^n, checked
    // as polynomials in z with LaurentPoly coefficients.
    for (int m = 1; m <= 8; ++m) {
        std::vector<LaurentPoly> zpoly{one};
        for (int k = 0; k < m; ++k) {
            std::vector<LaurentPoly> next(zpoly.size() + 1, LaurentPoly::zero());
            for (std::size_t n = 0; n < zpoly.size(); ++n) {
                next[n] += zpoly[n];
                next[n + 1] += zpoly[n].shifted(k);
            }
            zpoly = std::move(next);
        }
        for (int n = 0; n <= m; ++n)
            CHECK(zpoly[static_cast<std::size_t>(n)] ==
                  gauss_binomial(m, n).shifted(n * (n - 1) / 2));

        // z = -1 specialization: 1 == sum_{n>=1} (-1)^{n+1} t^{n(n-1)/2} [m,n]_t.
        LaurentPoly alt = LaurentPoly::zero();
        for (int n = 1; n <= m; ++n) {
            auto term = gauss_binomial(m, n).shifted(n * (n - 1) / 2);
            alt += (n % 2 == 1) ? term : -term;
        }
        CHECK(alt == one);
    }
}

TEST_CASE("negate_vars and helpers", "[laurent]") {
    CHECK((one + t).negate_vars() == one - t);
    CHECK((one + t).negate_vars().negate_vars() == one + t);
    CHECK(LaurentPoly::monomial(3, -1).negate_vars() == LaurentPoly::monomial(-3, -1));
    const auto uv = LaurentPoly::u() * LaurentPoly::v();
    CHECK(uv.negate_vars() == uv);
    CHECK(LaurentPoly::u().negate_vars() == -LaurentPoly::u());
    CHECK((LaurentPoly::u() + LaurentPoly::v() * Int(2)).swap_vars() ==
          LaurentPoly::v() + LaurentPoly::u() * Int(2));

    SECTION("compose t -> t-1") {
        CHECK((t * t).compose_t_minus_one() == parse_simple({{0, 1}, {1, -2}, {2, 1}}));
        CHECK(parse_simple({{0, 3}, {1, 2}}).compose_t_minus_one() == parse_simple({{0, 1}, {1, 2}}));
        CHECK_THROWS_AS(LaurentPoly::monomial(1, -1).compose_t_minus_one(), computation_error);
    }
}

#include "icmod/serialize.hpp"

TEST_CASE("canonical JSON form", "[laurent][serialize]") {
    SECTION("univariate: [exponent, decimal-string] pairs ascending") {
        LaurentPoly p;
        p.add_term({-2, 0}, 3);
        p.add_term({5, 0}, -7);
        const json j = poly_to_json(p);
        REQUIRE(j.is_array());
        REQUIRE(j.size() == 2);
        CHECK(j[0][0] == -2);
        CHECK(j[0][1] == "3");
        CHECK(j[1][0] == 5);
        CHECK(j[1][1] == "-7");
        CHECK(poly_from_json(j, Arity::univariate) == p);
    }
    SECTION("coefficients beyond 64 bits survive the round trip") {
        const LaurentPoly p = (one + t).pow(120); // central coefficient ~ 10^35
        CHECK(poly_from_json(poly_to_json(p), Arity::univariate) == p);
        CHECK(p.coeff(60) > Int("18446744073709551615"));
    }
    SECTION("bivariate: [[p, q], decimal-string] pairs, lexicographic") {
        LaurentPoly p(Arity::bivariate);
        p.add_term({1, 2}, 4);
        p.add_term({0, 1}, 1);
        const json j = poly_to_json(p);
        CHECK(j[0][0] == json::array({0, 1}));
        CHECK(j[1][0] == json::array({1, 2}));
        CHECK(poly_from_json(j, Arity::bivariate) == p);
    }
    SECTION("bad payloads are rejected") {
        CHECK_THROWS_AS(poly_from_json(json::parse(R"([[0, 1]])"), Arity::univariate),
                        usage_error);
        CHECK_THROWS_AS(poly_from_json(json::parse(R"([[0, "x"]])"), Arity::univariate),
                        usage_error);
        CHECK_THROWS_AS(poly_from_json(json::parse(R"({})"), Arity::univariate), usage_error);
    }
}
