#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qserre/gamma_hrr.hpp"
#include "qserre/givental.hpp"
#include "qserre/hodge.hpp"
#include "qserre/laplace.hpp"
#include "qserre/lefschetz.hpp"
#include "qserre/report.hpp"
#include "qserre/second_structure.hpp"
#include "qserre/weyl.hpp"

namespace qserre {

struct RunConfig {
    int n = 4;
    int order = 10;   // D
    int worder = 8;   // W
    double tol = 1e-10;
};

inline void validate(const RunConfig& c) {
    if (c.n < 1) throw std::invalid_argument("n must be >= 1");
    if (c.order < 1) throw std::invalid_argument("order must be >= 1");
    if (c.worder < 1) throw std::invalid_argument("worder must be >= 1");
    if (!(c.tol > 0)) throw std::invalid_argument("tol must be positive");
}

// Published quintic values.
namespace golden {

inline std::vector<Rational> table1() {
    return {Rational(-650),
            Rational(-160625),
            frac(-337216250, 3),
            frac(-217998840625, 2),
            Rational(-125251505498880),
            parse_rational("-479299410776921825/3"),
            parse_rational("-1531227197616745455000/7"),
            parse_rational("-1260949629604284268280625/4")};
}

// Coefficients of q^1 .. q^5.
inline std::vector<Rational> m_eu() { return {1, 770, 1014275, 1703916750, Rational(3286569025625)}; }
inline std::vector<Rational> m_loc() { return {1, -120, 63900, -63148000, Rational(85136103750)}; }
inline std::vector<Rational> f_bar_printed() { return {1, -650, 50625, -5377000, Rational(-49529975000)}; }

// F_bar = q exp(sum_d N_d q^d) rebuilt from a list of invariants.
inline UniSeries f_bar_from_invariants(const std::vector<Rational>& N, int order) {
    UniSeries s(order);
    for (std::size_t d = 1; d <= N.size() && static_cast<int>(d) <= order; ++d) s[static_cast<int>(d)] = N[d - 1];
    return s.exp().multiply_by_q().truncated(order);
}

struct PrintedEntry {
    Rational coeff;
    int q_pow;
    int x_pow;
};

// Numerator matrices of the quintic second structure connection, as printed (q = e^t).
inline std::vector<std::vector<PrintedEntry>> printed_M_t() {
    return {{{625, 1, 0}, {125, 1, 1}, {25, 1, 2}, {5, 1, 3}, {1, 1, 4}},
            {{1, 0, 4}, {625, 1, 0}, {125, 1, 1}, {25, 1, 2}, {5, 1, 2}},
            {{5, 0, 3}, {1, 0, 4}, {625, 1, 0}, {125, 1, 1}, {25, 1, 2}},
            {{25, 0, 2}, {5, 0, 3}, {1, 0, 4}, {625, 1, 0}, {125, 1, 1}},
            {{125, 0, 1}, {25, 0, 2}, {5, 0, 3}, {1, 0, 4}, {625, 1, 0}}};
}
inline std::vector<std::vector<PrintedEntry>> printed_M_x() {
    return {{{1, 0, 4}, {625, 1, 0}, {125, 1, 1}, {25, 1, 2}, {5, 1, 3}},
            {{5, 0, 3}, {1, 0, 4}, {625, 1, 0}, {125, 1, 1}, {25, 1, 2}},
            {{25, 0, 2}, {5, 0, 3}, {1, 0, 4}, {625, 1, 0}, {125, 1, 1}},
            {{125, 0, 1}, {25, 0, 2}, {5, 0, 3}, {1, 0, 4}, {625, 1, 0}},
            {{625, 0, 0}, {125, 0, 1}, {25, 0, 2}, {5, 0, 3}, {1, 0, 4}}};
}

inline Poly2 to_poly(const PrintedEntry& e) { return Poly2::monomial({e.q_pow, e.x_pow}, e.coeff); }

}  // namespace golden

// Weighted degree with q of weight n+1 and x of weight 1; -1 if inhomogeneous or zero.
inline int weighted_degree(const Poly2& p, int n) {
    std::set<int> w;
    for (const auto& [e, c] : p.terms()) w.insert((n + 1) * e[0] + e[1]);
    return w.size() == 1 ? *w.begin() : -1;
}

// Generated numerators against the printed ones. Any disagreement must sit on a printed entry that breaks
// the weighted homogeneity (weight base + j - i) that the grading forces; such entries are reported as misprints.
inline Report printed_matrix_check(const std::string& name, const DenseMatrix<Poly2>& gen,
                                   const std::vector<std::vector<golden::PrintedEntry>>& printed, int base) {
    Report r("printed_" + name);
    nlohmann::json misprints = nlohmann::json::array();
    for (std::size_t i = 0; i < printed.size(); ++i)
        for (std::size_t j = 0; j < printed[i].size(); ++j) {
            const Poly2 p = golden::to_poly(printed[i][j]);
            const int want = base + static_cast<int>(j) - static_cast<int>(i);
            r.require(weighted_degree(gen(i, j), 4) == want, name + " generated entry (" + std::to_string(i) + "," +
                                                                  std::to_string(j) + ") is not of weight " + std::to_string(want));
            if (gen(i, j) == p) continue;
            const std::string where = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            if (weighted_degree(p, 4) != want) {
                misprints.push_back({{"entry", where}, {"printed", to_string(p)}, {"generated", to_string(gen(i, j))}});
                r.note(name + where + ": printed " + to_string(p) + " has weight " + std::to_string(weighted_degree(p, 4)) +
                       " instead of " + std::to_string(want) + "; generated " + to_string(gen(i, j)));
            } else {
                r.fail(name + where + ": generated " + to_string(gen(i, j)) + ", printed " + to_string(p));
            }
        }
    r.data["misprints"] = misprints;
    return r;
}

inline std::vector<Rational> sample_sigmas(int n, int random_count, unsigned seed = 20240611u) {
    std::vector<Rational> s;
    for (int k = -n - 1; k <= n + 1; k += 2) s.push_back(frac(k, 2));
    std::mt19937 gen(seed);
    std::uniform_int_distribution<int> num(-40, 40), den(2, 13);
    while (static_cast<int>(s.size()) < n + 2 + random_count) {
        Rational v = frac(num(gen), den(gen));
        if (std::find(s.begin(), s.end(), v) == s.end() && !detail::is_int(2 * v)) s.push_back(v);
    }
    return s;
}

// ---- suites ----

inline std::vector<Report> suite_mirror(const RunConfig& c) {
    std::vector<Report> out;
    const auto m = mirror_maps(c.n, c.order);
    out.push_back(mirror_compatibility_check(m));
    out.push_back(integrality_check(m));
    if (c.n != 4) return out;

    Report g("quintic_golden");
    auto cmp = [&](const char* name, const UniSeries& s, const std::vector<Rational>& want, std::size_t skip = 99) {
        for (std::size_t k = 0; k < want.size() && static_cast<int>(k) + 1 <= s.order(); ++k)
            if (k != skip && s[static_cast<int>(k) + 1] != want[k])
                g.fail(std::string(name) + " q^" + std::to_string(k + 1) + ": " + s[static_cast<int>(k) + 1].get_str() +
                       " vs " + want[k].get_str());
    };
    cmp("M_eu", m.M_eu, golden::m_eu());
    cmp("M_loc", m.M_loc, golden::m_loc());
    // q^4 of the printed F_bar disagrees with the printed invariants; compare it against the value they imply.
    cmp("F_bar", m.F_bar, golden::f_bar_printed(), 3);
    const auto table = golden::table1();
    const auto implied = golden::f_bar_from_invariants(table, 5);
    auto printed_q4_series = implied;
    printed_q4_series[4] = golden::f_bar_printed()[3];
    const Rational n3_from_printed = printed_q4_series.divide_by_q().log()[3];
    if (m.F_bar.order() >= 4) {
        g.require(m.F_bar[4] == implied[4], "F_bar q^4 differs from the value implied by the invariant table");
        g.require(n3_from_printed != table[2], "printed F_bar q^4 was expected to contradict N_3");
        g.note("printed F_bar q^4 = " + golden::f_bar_printed()[3].get_str() + " implies N_3 = " + n3_from_printed.get_str() +
               ", contradicting N_3 = " + table[2].get_str() + "; the table implies q^4 = " + implied[4].get_str());
    }
    g.data["F_bar_q4_from_table"] = implied[4].get_str();
    for (std::size_t d = 1; d <= table.size(); ++d) {
        if (d > m.N_table.size()) {
            g.note("N_" + std::to_string(d) + " needs order >= " + std::to_string(d + 1));
            continue;
        }
        if (m.N_table[d - 1] != table[d - 1])
            g.fail("N_" + std::to_string(d) + " = " + m.N_table[d - 1].get_str() + ", expected " + table[d - 1].get_str());
    }
    out.push_back(g);
    return out;
}

inline std::vector<Report> suite_matrices(const RunConfig& c) {
    std::vector<Report> out;
    if (c.n != 4) return out;
    const auto f = ssc_factors(4);
    out.push_back(printed_matrix_check("M_t", f.M_t, golden::printed_M_t(), 5));
    out.push_back(printed_matrix_check("M_x", f.M_x, golden::printed_M_x(), 4));
    Report d("discriminant");
    d.require(f.den == Poly2::monomial({1, 0}, 3125) - poly_x(5), "denominator is not 5^5 q - x^5");
    out.push_back(d);
    return out;
}

inline std::vector<Report> suite_flatness(const RunConfig& c) {
    std::vector<Report> out;
    for (const auto& s : sample_sigmas(c.n, 3)) {
        out.push_back(flatness_check(ssc_connection(s, c.n)));
        out.push_back(second_metric_flatness(s, c.n));
        out.push_back(delta_intertwining(s, c.n));
    }
    out.push_back(second_metric_asymptotics(c.n));
    Report rk("delta_rank");
    const std::size_t rank_delta = rank(delta_total(c.n).num());
    rk.data["rank"] = rank_delta;
    rk.require(rank_delta == static_cast<std::size_t>(c.n), "rank of Delta is " + std::to_string(rank_delta));
    rk.require(rank(delta(frac(c.n - 1, 2) + 1, c.n).num()) == static_cast<std::size_t>(c.n) + 1,
               "Delta_sigma is singular away from the critical range");
    out.push_back(rk);
    out.push_back(delta_t0_check(c.n));
    auto mats = suite_matrices(c);
    out.insert(out.end(), mats.begin(), mats.end());
    return out;
}

inline std::vector<Report> suite_laplace(const RunConfig& c) {
    std::vector<Report> out;
    const int W = c.worder;
    const auto dd = extract_descendants(c.n, std::max(c.order, W));
    const Rational hi = frac(c.n + 1, 2), lo = -hi;
    out.push_back(verify_ssc_solution(kcheck_columns(dd, hi, 1, W), hi, c.n, W));
    out.push_back(verify_ssc_solution(kcheck_columns(dd, lo, 0, W), lo, c.n, W));
    Report fl("fl_rules_all");
    for (std::size_t a = 0; a < dd.alg->rank(); ++a) {
        fl.absorb(fl_rules_check(kseries_column(dd, hi, static_cast<int>(a), W), Rational(1)));
        fl.absorb(fl_rules_check(kseries_column(dd, lo, static_cast<int>(a), W), Rational(0)));
    }
    out.push_back(fl);
    Report neg("flat_section_control");
    const auto wrong = verify_flat_section(kcheck_column(dd, hi, 1, 0, W), lo, c.n, W);
    neg.require(!wrong.passed, "a column for sigma = (n+1)/2 was accepted by the sigma = -(n+1)/2 connection");
    out.push_back(neg);
    const int Wd = std::min(W, 6);
    out.push_back(delta_relation_check(dd, Wd));
    out.push_back(kcheck_pairing_check(dd, Wd));
    return out;
}

inline std::vector<Report> suite_weyl(const RunConfig& c) {
    std::vector<Report> out;
    const int W = c.worder;
    if (c.n == 4) {
        const auto o = build_quintic_ops();
        out.push_back(factorization_check(o));
        out.push_back(intertwiner_check(o));
        out.push_back(sigma_specialization_check(o));
        const int Wq = std::max(W, 10);
        auto eu = annihilate_check(o.D_eu, quintic_phi_eu(Wq), Wq);
        eu.name = "annihilate_eu";
        auto loc = annihilate_check(o.D_loc, quintic_phi_loc(Wq), Wq);
        loc.name = "annihilate_loc";
        out.push_back(eu);
        out.push_back(loc);
        Report neg("annihilate_control");
        const auto cross = annihilate_check(o.D_eu, quintic_phi_loc(Wq), Wq);
        neg.data["lowest_residual_degree"] = cross.data["lowest_residual_degree"];
        neg.require(!cross.passed && cross.data["lowest_residual_degree"] == 1, "D_eu applied to phi_loc should fail first at w^1");
        out.push_back(neg);
    }
    const auto dd = extract_descendants(c.n, std::max(c.order, W));
    for (const Rational& s : {frac(2, 7), frac(c.n + 1, 2)}) {
        auto rep = annihilate_check(unit_operator(c.n).substitute_sigma(s), kcheck_column(dd, s, s + frac(c.n - 1, 2), 0, W), W);
        rep.name = "unit_operator sigma=" + s.get_str();
        out.push_back(rep);
    }
    return out;
}

inline std::vector<Report> suite_hrr(const RunConfig& c) {
    std::vector<Report> out;
    if (c.n <= 8) out.push_back(gamma_todd_identity(c.n, c.tol));
    out.push_back(hrr_check(c.n, 10, c.tol));
    for (int k : {0, 1, c.n + 1}) out.push_back(selfintersection_check(k, c.n));
    return out;
}

inline std::vector<Report> suite_hodge(const RunConfig& c) {
    std::vector<Report> out;
    const auto loc = floc_filtration(c.n);
    const auto eu = feu_filtration(c.n, loc);
    out.push_back(filtration_structure_check(c.n, loc, eu));
    out.push_back(griffiths_check(loc, frac(-(c.n + 1), 2), c.n, "loc"));
    out.push_back(griffiths_check(eu, frac(c.n + 1, 2), c.n, "eu"));
    const auto td = ttilde_data(c.n, eu);
    if (c.n == 4) out.push_back(ttilde_table_check(td));
    const int W = std::min(c.worder, 6);
    const auto dd = extract_descendants(c.n, std::max(c.order, W));
    out.push_back(kcheck_ttilde(dd, td.ttilde, W));
    return out;
}

inline std::vector<Report> suite_pairing(const RunConfig& c) {
    std::vector<Report> out;
    out.push_back(pairing_identity_check(c.n, std::min(c.order, 6)));
    const auto dd = extract_descendants(c.n, std::min(c.order, 6));
    for (auto kind : {Twist::Euler, Twist::Local}) {
        const auto I = i_matrix(kind, dd);
        auto rep = lu_check(*dd.alg, I, lu_factorize(I));
        rep.name = std::string("lu_") + twist_name(kind);
        out.push_back(rep);
    }
    return out;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"flatness", "laplace", "weyl", "hrr", "hodge", "mirror", "pairing"};
    return names;
}

inline std::vector<Report> run_suite(const std::string& name, const RunConfig& c) {
    if (name == "flatness") return suite_flatness(c);
    if (name == "laplace") return suite_laplace(c);
    if (name == "weyl") return suite_weyl(c);
    if (name == "hrr") return suite_hrr(c);
    if (name == "hodge") return suite_hodge(c);
    if (name == "mirror") return suite_mirror(c);
    if (name == "pairing") return suite_pairing(c);
    throw std::invalid_argument("unknown suite " + name);
}

}  // namespace qserre
