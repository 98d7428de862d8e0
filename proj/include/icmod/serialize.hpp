#pragma once

#include <json.hpp>

#include <string>

#include "icmod/laurent.hpp"
#include "icmod/qseries.hpp"

namespace icmod {

using json = nlohmann::json;

/// Canonical JSON form of a polynomial: array of [exponent, coefficient]
/// pairs sorted by exponent ascending (bivariate: [[p, q], coefficient],
/// sorted lexicographically).  Coefficients are decimal strings; they
/// overflow 64-bit integers already at moderate genus and rank.
inline json poly_to_json(const LaurentPoly& p) {
    json arr = json::array();
    for (const auto& [e, c] : p.terms()) {
        if (p.arity() == Arity::univariate)
            arr.push_back(json::array({e.a, c.str()}));
        else
            arr.push_back(json::array({json::array({e.a, e.b}), c.str()}));
    }
    return arr;
}

inline LaurentPoly poly_from_json(const json& j, Arity ar) {
    if (!j.is_array()) throw usage_error("polynomial JSON: array expected");
    LaurentPoly p(ar);
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 2)
            throw usage_error("polynomial JSON: [exponent, coefficient] pair expected");
        Exp e;
        if (ar == Arity::univariate) {
            if (!item[0].is_number_integer())
                throw usage_error("polynomial JSON: integer exponent expected");
            e.a = item[0].get<int>();
        } else {
            if (!item[0].is_array() || item[0].size() != 2 ||
                !item[0][0].is_number_integer() || !item[0][1].is_number_integer())
                throw usage_error("polynomial JSON: exponent pair [p, q] expected");
            e.a = item[0][0].get<int>();
            e.b = item[0][1].get<int>();
        }
        if (!item[1].is_string())
            throw usage_error("polynomial JSON: coefficient must be a decimal string");
        Int c;
        try {
            c = Int(item[1].get<std::string>());
        } catch (const std::exception&) {
            throw usage_error("polynomial JSON: bad coefficient string '" +
                              item[1].get<std::string>() + "'");
        }
        p.add_term(e, c);
    }
    return p;
}

inline json qseries_to_json(const QSeries& s) {
    json coeffs = json::array();
    for (int r = 0; r <= s.r_max(); ++r) coeffs.push_back(poly_to_json(s.coeff(r)));
    return json{{"r_max", s.r_max()}, {"coeffs", coeffs}};
}

inline QSeries qseries_from_json(const json& j, Arity ar) {
    if (!j.contains("r_max") || !j.contains("coeffs"))
        throw usage_error("QSeries JSON: r_max and coeffs required");
    QSeries s(j["r_max"].get<int>(), ar);
    const auto& coeffs = j["coeffs"];
    if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != s.r_max() + 1)
        throw usage_error("QSeries JSON: coeffs length must be r_max + 1");
    for (int r = 0; r <= s.r_max(); ++r) s.set_coeff(r, poly_from_json(coeffs[r], ar));
    return s;
}

/// LaTeX rendering, exponents in braces: "1 + 2t^{2} - t^{10}".
inline std::string poly_to_latex(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        const Int a = c < 0 ? Int(-c) : c;
        out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        first = false;
        const bool is_const = e == Exp{0, 0};
        if (a != 1 || is_const) out += a.str();
        auto emit_var = [&out](const char* var, int exp) {
            if (exp == 0) return;
            out += var;
            if (exp != 1) out += "^{" + std::to_string(exp) + "}";
        };
        if (p.arity() == Arity::univariate) {
            emit_var("t", e.a);
        } else {
            emit_var("u", e.a);
            emit_var("v", e.b);
        }
    }
    return out;
}

} // namespace icmod
