// icmod: exact intersection Poincare polynomials of moduli spaces of
// semistable bundles, with the intermediate fiber/stalk/local-system
// quantities and a verification suite.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "icmod/cache.hpp"
#include "icmod/engine.hpp"
#include "icmod/local.hpp"

namespace {

using namespace icmod;

// ---------------------------------------------------------------------------
// output

std::string exponent_label(const Exp& e, Arity ar) {
    if (ar == Arity::univariate) return std::to_string(e.a);
    return std::to_string(e.a) + ":" + std::to_string(e.b);
}

void emit_poly(std::ostream& os, const std::string& format, int genus,
               const std::string& key_label, const std::string& key, const std::string& kind,
               const LaurentPoly& poly) {
    if (format == "json") {
        const json envelope{
            {"genus", genus}, {"key", key}, {"kind", kind}, {"poly", poly_to_json(poly)}};
        os << envelope.dump() << '\n';
    } else if (format == "csv") {
        os << "genus," << key_label << ",exponent,coefficient\n";
        for (const auto& [e, c] : poly.terms())
            os << genus << ',' << key << ',' << exponent_label(e, poly.arity()) << ',' << c.str()
               << '\n';
    } else if (format == "latex") {
        os << "$" << poly_to_latex(poly) << "$\n";
    } else {
        throw usage_error("unknown format '" + format + "' (json|csv|latex)");
    }
}

std::pair<int, int> parse_genus_range(const std::string& text) {
    int lo = 0, hi = 0;
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoi(text);
        } else {
            lo = std::stoi(text.substr(0, dots));
            hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw usage_error("cannot parse genus range '" + text + "' (expected G or A..B)");
    }
    require_genus(lo);
    if (hi < lo) throw usage_error("empty genus range '" + text + "'");
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// cache-assisted computations

SmoothTable smooth_with_cache(int g, int max_rank, bool with_hodge, const Cache& cache) {
    SmoothTable t;
    t.genus = g;
    t.provenance = SmoothTable::Provenance::builtin_hn;
    for (int r = 1; r <= max_rank; ++r) {
        const std::string key = "r" + std::to_string(r);
        bool have = false;
        if (auto hit = cache.lookup(g, "smooth-betti", key, Arity::univariate)) {
            try {
                detail::validate_betti_entry(g, r, *hit);
                t.betti[r] = std::move(*hit);
                have = true;
            } catch (const usage_error&) {
            }
        }
        if (!have) {
            t.betti[r] = hn_poincare_m1(r, g);
            cache.store(g, "smooth-betti", key, t.betti[r]);
        }
        if (with_hodge) {
            bool have_h = false;
            if (auto hit = cache.lookup(g, "smooth-hodge", key, Arity::bivariate)) {
                try {
                    detail::validate_hodge_entry(g, r, *hit, &t.betti[r]);
                    t.hodge[r] = std::move(*hit);
                    have_h = true;
                } catch (const usage_error&) {
                }
            }
            if (!have_h) {
                t.hodge[r] = hn_hodge_m1(r, g);
                cache.store(g, "smooth-hodge", key, t.hodge[r]);
            }
        }
    }
    return t;
}

SmoothTable effective_table(int g, int max_rank, bool with_hodge, const Cache& cache,
                            const std::string& user_path) {
    SmoothTable builtin = smooth_with_cache(g, max_rank, with_hodge, cache);
    if (user_path.empty()) return builtin;
    return load_smooth_table(user_path).merged_over(builtin);
}

LaurentPoly ip_with_cache(int r, int g, const SmoothTable& smooth, const Cache& cache) {
    const std::string key = "r" + std::to_string(r);
    if (smooth.provenance == SmoothTable::Provenance::builtin_hn) {
        if (auto hit = cache.lookup(g, "ip", key, Arity::univariate)) {
            if (detail::ip_defects(*hit, g, r).empty()) return *hit;
        }
    }
    LaurentPoly ip = ip_m0(r, g, smooth);
    if (smooth.provenance == SmoothTable::Provenance::builtin_hn) cache.store(g, "ip", key, ip);
    return ip;
}

// ---------------------------------------------------------------------------
// subcommands

int run_ip(int genus, int rank, bool hodge, const std::string& format,
           const std::string& cache_dir, const std::string& smooth_path) {
    require_genus(genus);
    if (rank < 1) throw usage_error("rank >= 1 required");
    const Cache cache = Cache::resolve(cache_dir);
    const SmoothTable smooth = effective_table(genus, rank, hodge, cache, smooth_path);
    const std::string key = "r" + std::to_string(rank);
    if (!hodge) {
        emit_poly(std::cout, format, genus, "rank", std::to_string(rank), "ip",
                  ip_with_cache(rank, genus, smooth, cache));
        return 0;
    }
    LaurentPoly ih;
    bool cached = false;
    if (smooth.provenance == SmoothTable::Provenance::builtin_hn) {
        if (auto hit = cache.lookup(genus, "ip-hodge", key, Arity::bivariate)) {
            ih = std::move(*hit);
            cached = true;
        }
    }
    if (!cached) {
        ih = ih_hodge_m0(rank, genus, smooth);
        if (smooth.provenance == SmoothTable::Provenance::builtin_hn)
            cache.store(genus, "ip-hodge", key, ih);
    }
    emit_poly(std::cout, format, genus, "rank", std::to_string(rank), "ip-hodge", ih);
    return 0;
}

int run_fiber(int genus, const std::string& rho_text, const std::string& method,
              const std::string& format, const std::string& cache_dir) {
    require_genus(genus);
    const Partition rho = Partition::parse(rho_text);
    const Cache cache = Cache::resolve(cache_dir);
    LocalContext ctx(genus);
    auto by_method = [&](const std::string& m) -> LaurentPoly {
        if (m == "recursion") return ctx.fiber_recursive(rho).adams(2);
        if (m == "graphs") return f_via_graphs(rho, genus).adams(2);
        if (m == "identity") return ctx.fiber_via_identity(rho).adams(2);
        throw usage_error("unknown fiber method '" + m + "' (recursion|graphs|identity|all)");
    };
    if (method != "all") {
        LaurentPoly p;
        if (auto hit = cache.lookup(genus, "fiber", rho.str(), Arity::univariate)) {
            p = std::move(*hit);
        } else {
            p = by_method(method);
            cache.store(genus, "fiber", rho.str(), p);
        }
        emit_poly(std::cout, format, genus, "rho", rho.str(), "fiber", p);
        return 0;
    }
    const LaurentPoly recursion = by_method("recursion");
    const LaurentPoly graphs = by_method("graphs");
    const LaurentPoly identity = by_method("identity");
    const bool agree = recursion == graphs && graphs == identity;
    std::cout << "recursion: ";
    emit_poly(std::cout, format, genus, "rho", rho.str(), "fiber", recursion);
    std::cout << "graphs: ";
    emit_poly(std::cout, format, genus, "rho", rho.str(), "fiber", graphs);
    std::cout << "identity: ";
    emit_poly(std::cout, format, genus, "rho", rho.str(), "fiber", identity);
    std::cout << "verdict: " << (agree ? "agree" : "DISAGREE") << '\n';
    if (agree) cache.store(genus, "fiber", rho.str(), recursion);
    return agree ? 0 : 1;
}

int run_stalk(int genus, const std::string& rho_text, int root, const std::string& format,
              const std::string& cache_dir) {
    require_genus(genus);
    const Partition rho = Partition::parse(rho_text);
    const Cache cache = Cache::resolve(cache_dir);
    LaurentPoly p;
    if (auto hit = cache.lookup(genus, "stalk", rho.str(), Arity::univariate)) {
        p = std::move(*hit);
    } else {
        p = g_via_graphs(rho, genus, root).adams(2);
        cache.store(genus, "stalk", rho.str(), p);
    }
    emit_poly(std::cout, format, genus, "rho", rho.str(), "stalk", p);
    return 0;
}

int run_lhilb(int genus, const std::string& rho_text, const std::string& method,
              const std::string& format, const std::string& cache_dir) {
    require_genus(genus);
    const Partition rho = Partition::parse(rho_text);
    const Cache cache = Cache::resolve(cache_dir);
    LocalContext ctx(genus);
    if (method == "closed" || method == "subtraction") {
        LaurentPoly p;
        if (auto hit = cache.lookup(genus, "L-hilb", rho.str(), Arity::univariate)) {
            p = std::move(*hit);
        } else {
            p = method == "closed" ? ctx.hilb_L_closed(rho) : ctx.hilb_L_subtraction(rho);
            cache.store(genus, "L-hilb", rho.str(), p);
        }
        emit_poly(std::cout, format, genus, "rho", rho.str(), "L-hilb", p);
        return 0;
    }
    if (method != "all")
        throw usage_error("unknown lhilb method '" + method + "' (closed|subtraction|all)");
    const LaurentPoly closed = ctx.hilb_L_closed(rho);
    const LaurentPoly subtraction = ctx.hilb_L_subtraction(rho);
    const bool agree = closed == subtraction;
    std::cout << "closed: ";
    emit_poly(std::cout, format, genus, "rho", rho.str(), "L-hilb", closed);
    std::cout << "subtraction: ";
    emit_poly(std::cout, format, genus, "rho", rho.str(), "L-hilb", subtraction);
    std::cout << "verdict: " << (agree ? "agree" : "DISAGREE") << '\n';
    if (agree) cache.store(genus, "L-hilb", rho.str(), closed);
    return agree ? 0 : 1;
}

int run_smooth(int genus, int rank, bool hodge, const std::string& format,
               const std::string& cache_dir, int table_max_rank,
               const std::string& table_out) {
    require_genus(genus);
    const Cache cache = Cache::resolve(cache_dir);
    if (!table_out.empty()) {
        if (table_max_rank < 1) throw usage_error("--max-rank >= 1 required with --table-out");
        const SmoothTable t = smooth_with_cache(genus, table_max_rank, hodge, cache);
        std::ofstream out(table_out);
        if (!out) throw usage_error("cannot write " + table_out);
        out << smooth_table_to_json(t).dump() << '\n';
        return 0;
    }
    if (rank < 1) throw usage_error("rank >= 1 required");
    const SmoothTable t = smooth_with_cache(genus, rank, hodge, cache);
    if (hodge)
        emit_poly(std::cout, format, genus, "rank", std::to_string(rank), "smooth-hodge",
                  t.hodge_for(rank));
    else
        emit_poly(std::cout, format, genus, "rank", std::to_string(rank), "smooth-betti",
                  t.betti_for(rank));
    return 0;
}

// One verification item; `inputs` names the parameters in human-readable form.
struct CheckResult {
    std::string check;
    int genus;
    std::string inputs;
    bool pass;
};

int run_verify(const std::string& genus_range, int max_rank, const std::string& json_out,
               const std::string& cache_dir) {
    const auto [glo, ghi] = parse_genus_range(genus_range);
    if (max_rank < 1) throw usage_error("--max-rank >= 1 required");
    const Cache cache = Cache::resolve(cache_dir);
    std::vector<CheckResult> results;
    auto record = [&](const std::string& check, int g, const std::string& inputs, bool pass) {
        results.push_back({check, g, inputs, pass});
        std::cout << (pass ? "PASS " : "FAIL ") << check << " genus=" << g
                  << (inputs.empty() ? "" : " " + inputs) << '\n';
    };
    auto guarded = [&](const std::string& check, int g, const std::string& inputs,
                       const std::function<bool()>& body) {
        bool pass = false;
        try {
            pass = body();
        } catch (const std::exception& e) {
            std::cout << "  error: " << e.what() << '\n';
            pass = false;
        }
        record(check, g, inputs, pass);
    };

    // genus-independent checks
    guarded("pleth-roundtrip", 0, "100 random series, r_max=6", [&] {
        std::mt19937_64 rng(20240527);
        std::uniform_int_distribution<int> coeff(-2, 2);
        std::uniform_int_distribution<int> expo(-2, 3);
        for (int it = 0; it < 100; ++it) {
            QSeries a(6), b(6);
            for (int r = 1; r <= 6; ++r) {
                LaurentPoly pa, pb;
                for (int e = expo(rng); e <= 3; ++e) pa.add_term({e, 0}, coeff(rng));
                for (int e = expo(rng); e <= 3; ++e) pb.add_term({e, 0}, coeff(rng));
                a.set_coeff(r, pa);
                b.set_coeff(r, pb);
            }
            if (pleth_log(pleth_exp(a)) != a) return false;
            if (pleth_exp(a + b) != pleth_exp(a) * pleth_exp(b)) return false;
        }
        return true;
    });
    guarded("cauchy-binomial", 0, "m <= 8", [&] {
        for (int m = 1; m <= 8; ++m) {
            std::vector<LaurentPoly> zpoly{LaurentPoly::constant(1)};
            for (int k = 0; k < m; ++k) {
                std::vector<LaurentPoly> next(zpoly.size() + 1, LaurentPoly::zero());
                for (std::size_t n = 0; n < zpoly.size(); ++n) {
                    next[n] += zpoly[n];
                    next[n + 1] += zpoly[n].shifted(k);
                }
                zpoly = std::move(next);
            }
            LaurentPoly alt;
            for (int n = 0; n <= m; ++n) {
                const LaurentPoly rhs = gauss_binomial(m, n).shifted(n * (n - 1) / 2);
                if (zpoly[static_cast<std::size_t>(n)] != rhs) return false;
                if (n >= 1) alt += (n % 2 == 1) ? rhs : -rhs;
            }
            if (alt != LaurentPoly::constant(1)) return false;
        }
        return true;
    });

    for (int g = glo; g <= ghi; ++g) {
        const SmoothTable smooth = smooth_with_cache(g, max_rank, false, cache);
        LocalContext ctx(g);

        if (max_rank >= 2)
            guarded("hn-rank2-oracle", g, "", [&] {
                const LaurentPoly one = LaurentPoly::constant(1);
                const LaurentPoly t = LaurentPoly::t();
                const LaurentPoly num = (one + t.pow(3)).pow(2 * g) -
                                        LaurentPoly::monomial(1, 2 * g) * (one + t).pow(2 * g);
                const LaurentPoly den = (one - t.pow(2)) * (one - t.pow(4));
                return smooth.betti_for(2) == (one + t).pow(2 * g) * exact_div(num, den);
            });

        guarded("jacobian-base", g, "rank 1", [&] {
            return ip_with_cache(1, g, smooth, cache) ==
                   (LaurentPoly::constant(1) + LaurentPoly::t()).pow(2 * g);
        });

        guarded("ip-structural", g, "r <= " + std::to_string(max_rank), [&] {
            const SignedSeriesBundle bundle = solve_ip_series(max_rank, g, smooth);
            for (int r = 1; r <= max_rank; ++r) {
                if (!detail::ip_defects(bundle.solved.at(r), g, r).empty()) return false;
                cache.store(g, "ip", "r" + std::to_string(r), bundle.solved.at(r));
            }
            return true;
        });

        if (max_rank >= 2)
            guarded("rank2-closed-form", g, "", [&] {
                return ip_with_cache(2, g, smooth, cache) == ip_m0_rank2_closed(g, smooth);
            });

        const int local_bound = std::min(max_rank, 5);
        guarded("fiber-cross", g, "r <= " + std::to_string(std::min(max_rank, 4)), [&] {
            for (int r = 1; r <= std::min(max_rank, 4); ++r)
                for (const auto& rho : partitions_of(r))
                    if (ctx.fiber_recursive(rho) != f_via_graphs(rho, g)) return false;
            if (max_rank >= 5 && g == 2) {
                const Partition ones(std::vector<int>{1, 1, 1, 1, 1});
                if (ctx.fiber_recursive(ones) != f_via_graphs(ones, g)) return false;
            }
            return true;
        });
        guarded("bijection-identity", g, "r <= " + std::to_string(local_bound), [&] {
            for (int r = 1; r <= local_bound; ++r)
                for (const auto& rho : partitions_of(r))
                    if (!ctx.f_cross_identity(rho)) return false;
            return true;
        });
        guarded("lhilb-agreement", g, "r <= " + std::to_string(local_bound), [&] {
            for (int r = 1; r <= local_bound; ++r)
                for (const auto& rho : partitions_of(r))
                    if (ctx.hilb_L_closed(rho) != ctx.hilb_L_subtraction(rho)) return false;
            return true;
        });
        guarded("root-independence", g, "r <= " + std::to_string(local_bound), [&] {
            for (int r = 2; r <= local_bound; ++r)
                for (const auto& rho : partitions_of(r)) {
                    const LaurentPoly ref = g_via_graphs(rho, g, 1);
                    for (int root = 2; root <= rho.length(); ++root)
                        if (g_via_graphs(rho, g, root) != ref) return false;
                }
            return true;
        });

        guarded("global-roundtrip", g, "r_max = " + std::to_string(max_rank), [&] {
            return verify_global(max_rank, g, smooth).all_pass;
        });

        if (g <= 3)
            guarded("hodge-purity", g, "r <= " + std::to_string(std::min(max_rank, 3)), [&] {
                const int bound = std::min(max_rank, 3);
                const SmoothTable hs = smooth_with_cache(g, bound, true, cache);
                for (int r = 1; r <= bound; ++r) {
                    const LaurentPoly h = ih_hodge_m0(r, g, hs); // throws on purity mismatch
                    if (h != h.swap_vars()) return false;
                }
                return true;
            });
    }

    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    std::cout << (all ? "all checks passed" : "CHECKS FAILED") << '\n';
    if (!json_out.empty()) {
        json arr = json::array();
        for (const auto& r : results)
            arr.push_back(json{{"check", r.check},
                               {"genus", r.genus},
                               {"inputs", r.inputs},
                               {"outcome", r.pass ? "pass" : "fail"}});
        std::ofstream out(json_out);
        if (!out) throw usage_error("cannot write " + json_out);
        out << arr.dump() << '\n';
    }
    return all ? 0 : 1;
}

int run_table(const std::string& genus_range, int max_rank, const std::string& out_dir,
              const std::string& format, const std::string& cache_dir) {
    const auto [glo, ghi] = parse_genus_range(genus_range);
    if (max_rank < 1) throw usage_error("--max-rank >= 1 required");
    const Cache cache = Cache::resolve(cache_dir);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        std::cerr << "error: cannot create output directory " << out_dir << '\n';
        return 1;
    }
    const std::string ext = format == "latex" ? "tex" : format;
    for (int g = glo; g <= ghi; ++g) {
        const SmoothTable smooth = smooth_with_cache(g, max_rank, false, cache);
        const SignedSeriesBundle bundle = solve_ip_series(max_rank, g, smooth);
        for (const std::string kind : {"ip", "smooth-betti"}) {
            const auto path = std::filesystem::path(out_dir) /
                              ("g" + std::to_string(g) + "_" + kind + "." + ext);
            std::ofstream out(path);
            if (!out) {
                std::cerr << "error: cannot write " << path.string() << '\n';
                return 1;
            }
            auto poly_for = [&](int r) -> const LaurentPoly& {
                return kind == "ip" ? bundle.solved.at(r) : smooth.betti_for(r);
            };
            if (format == "json") {
                json entries = json::array();
                for (int r = 1; r <= max_rank; ++r)
                    entries.push_back(json{{"rank", r}, {"poly", poly_to_json(poly_for(r))}});
                out << json{{"genus", g}, {"kind", kind}, {"entries", entries}}.dump() << '\n';
            } else if (format == "csv") {
                out << "genus,rank,exponent,coefficient\n";
                for (int r = 1; r <= max_rank; ++r)
                    for (const auto& [e, c] : poly_for(r).terms())
                        out << g << ',' << r << ',' << e.a << ',' << c.str() << '\n';
            } else if (format == "latex") {
                out << "\\begin{tabular}{rl}\n\\hline\n$r$ & "
                    << (kind == "ip" ? "$IP_t$" : "$P_t$") << " \\\\\n\\hline\n";
                for (int r = 1; r <= max_rank; ++r)
                    out << r << " & $" << poly_to_latex(poly_for(r)) << "$ \\\\\n";
                out << "\\hline\n\\end{tabular}\n";
            } else {
                throw usage_error("unknown format '" + format + "' (json|csv|latex)");
            }
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact intersection cohomology of moduli spaces of semistable bundles"};
    app.require_subcommand(1);
    int exit_code = 0;

    auto* ip = app.add_subcommand("ip", "intersection Poincare polynomial of M_0(r)");
    int ip_genus = 0, ip_rank = 0;
    bool ip_hodge = false;
    std::string ip_format = "json", ip_cache, ip_smooth;
    ip->add_option("--genus", ip_genus, "curve genus (>= 2)")->required();
    ip->add_option("--rank", ip_rank, "bundle rank (>= 1)")->required();
    ip->add_flag("--hodge", ip_hodge, "emit the Hodge refinement Ih_{u,v}");
    ip->add_option("--format", ip_format, "json|csv|latex");
    ip->add_option("--cache-dir", ip_cache, "cache directory (default: $MODULI_CACHE_DIR)");
    ip->add_option("--smooth-table", ip_smooth, "user smooth-table JSON overriding builtin HN");
    ip->callback(
        [&] { exit_code = run_ip(ip_genus, ip_rank, ip_hodge, ip_format, ip_cache, ip_smooth); });

    auto* fiber = app.add_subcommand("fiber", "Poincare polynomial of the parabolic fiber");
    int fb_genus = 0;
    std::string fb_rho, fb_method = "all", fb_format = "json", fb_cache;
    fiber->add_option("--genus", fb_genus)->required();
    fiber->add_option("--rho", fb_rho, "partition, e.g. 2,1,1")->required();
    fiber->add_option("--method", fb_method, "recursion|graphs|identity|all");
    fiber->add_option("--format", fb_format, "json|csv|latex");
    fiber->add_option("--cache-dir", fb_cache);
    fiber->callback(
        [&] { exit_code = run_fiber(fb_genus, fb_rho, fb_method, fb_format, fb_cache); });

    auto* stalk = app.add_subcommand("stalk", "IC-stalk polynomial of the normal slice");
    int st_genus = 0, st_root = 1;
    std::string st_rho, st_format = "json", st_cache;
    stalk->add_option("--genus", st_genus)->required();
    stalk->add_option("--rho", st_rho)->required();
    stalk->add_option("--root", st_root, "root vertex in 1..k (result is root-independent)");
    stalk->add_option("--format", st_format, "json|csv|latex");
    stalk->add_option("--cache-dir", st_cache);
    stalk->callback([&] { exit_code = run_stalk(st_genus, st_rho, st_root, st_format, st_cache); });

    auto* lhilb = app.add_subcommand("lhilb", "Hilbert function of the local-system stalk");
    int lh_genus = 0;
    std::string lh_rho, lh_method = "all", lh_format = "json", lh_cache;
    lhilb->add_option("--genus", lh_genus)->required();
    lhilb->add_option("--rho", lh_rho)->required();
    lhilb->add_option("--method", lh_method, "closed|subtraction|all");
    lhilb->add_option("--format", lh_format, "json|csv|latex");
    lhilb->add_option("--cache-dir", lh_cache);
    lhilb->callback(
        [&] { exit_code = run_lhilb(lh_genus, lh_rho, lh_method, lh_format, lh_cache); });

    auto* smooth = app.add_subcommand("smooth", "Poincare/Hodge polynomial of M_1(r)");
    int sm_genus = 0, sm_rank = 0, sm_max_rank = 0;
    bool sm_hodge = false;
    std::string sm_format = "json", sm_cache, sm_table_out;
    smooth->add_option("--genus", sm_genus)->required();
    smooth->add_option("--rank", sm_rank, "single rank to emit");
    smooth->add_option("--max-rank", sm_max_rank, "table span for --table-out");
    smooth->add_flag("--hodge", sm_hodge);
    smooth->add_option("--format", sm_format, "json|csv|latex");
    smooth->add_option("--cache-dir", sm_cache);
    smooth->add_option("--table-out", sm_table_out, "write a smooth-table JSON file");
    smooth->callback([&] {
        exit_code =
            run_smooth(sm_genus, sm_rank, sm_hodge, sm_format, sm_cache, sm_max_rank, sm_table_out);
    });

    auto* verify = app.add_subcommand("verify", "run the exact verification suite");
    std::string vf_range, vf_json, vf_cache;
    int vf_max_rank = 0;
    verify->add_option("--genus", vf_range, "genus or range A..B")->required();
    verify->add_option("--max-rank", vf_max_rank)->required();
    verify->add_option("--json-out", vf_json, "write the machine-readable report");
    verify->add_option("--cache-dir", vf_cache);
    verify->callback([&] { exit_code = run_verify(vf_range, vf_max_rank, vf_json, vf_cache); });

    auto* table = app.add_subcommand("table", "batch emission of polynomial tables");
    std::string tb_range, tb_out, tb_format = "csv", tb_cache;
    int tb_max_rank = 0;
    table->add_option("--genus", tb_range, "genus or range A..B")->required();
    table->add_option("--max-rank", tb_max_rank)->required();
    table->add_option("--out-dir", tb_out)->required();
    table->add_option("--format", tb_format, "json|csv|latex");
    table->add_option("--cache-dir", tb_cache);
    table->callback(
        [&] { exit_code = run_table(tb_range, tb_max_rank, tb_out, tb_format, tb_cache); });

    try {
        app.parse(argc, argv);
        return exit_code;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const computation_error& e) {
        std::cerr << "computation error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
