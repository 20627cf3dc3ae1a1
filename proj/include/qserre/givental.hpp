#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qserre/coh_algebra.hpp"
#include "qserre/series.hpp"

namespace qserre {

// Two-point descendant data N_{a,d}(z) on the small locus, with the twisting data it is used with.
struct DescendantData {
    AlgebraPtr alg;
    int order = 0;
    std::vector<std::vector<ZLaurent<Rational>>> N;          // [a][d]
    std::vector<std::vector<CohElement<Rational>>> N_at_one;  // [a][d]
    CohElement<Rational> rho;  // first Chern class of the tangent bundle and of the twisting bundle
    int rho_degree = 0;        // rho(d) = rho_degree * d
    int h2_index = 1;          // basis index of the degree-2 generator t is the coordinate of

    int rho_of(int d) const { return rho_degree * d; }
};

namespace detail {

// (h + k z)^{-1} = sum_m (-h)^m k^{-m-1} z^{-m-1}
inline ZLaurent<Rational> inverse_linear(const Algebra& alg, const CohElement<Rational>& h, const Rational& k) {
    ZLaurent<Rational> r;
    CohElement<Rational> pw = alg.unit();
    Rational kp = 1 / k;
    for (int m = 0; m <= alg.nilpotency_order(); ++m) {
        zl_add_term(r, -m - 1, pw * kp);
        pw = alg.mul(pw, -h);
        kp /= k;
        if (pw.is_zero()) break;
    }
    return r;
}

// a h + b z as a Laurent polynomial
inline ZLaurent<Rational> linear(const CohElement<Rational>& h, const Rational& a, const Rational& b, const Algebra& alg) {
    ZLaurent<Rational> r;
    zl_add_term(r, 0, h * a);
    zl_add_term(r, 1, alg.unit() * b);
    return r;
}

}  // namespace detail

// e^{tH/z}-stripped small J-function of P^n: slot d is prod_{k=1}^d (H + k z)^{-(n+1)}.
inline CohSeries<Rational> j_function(int n, int D) {
    if (D < 0) throw std::invalid_argument("order must be non-negative");
    auto alg = projective_space(n);
    const auto h = alg->basis(1);
    CohSeries<Rational> j(alg, D);
    ZLaurent<Rational> acc;
    acc.emplace(0, alg->unit());
    j.slot(0) = acc;
    for (int d = 1; d <= D; ++d) {
        auto inv = detail::inverse_linear(*alg, h, Rational(d));
        for (int i = 0; i <= n; ++i) acc = zl_mul(*alg, acc, inv);
        j.slot(d) = acc;
    }
    return j;
}

// Columns (z d/dt)^k J, k = 0..n, which equal L^{-1} H^k on the small locus.
inline std::vector<CohSeries<Rational>> fundsol_columns(int n, int D) {
    std::vector<CohSeries<Rational>> cols;
    auto j = j_function(n, D);
    const auto h = j.algebra()->basis(1);
    cols.push_back(j);
    for (int k = 1; k <= n; ++k) cols.push_back(cols.back().z_dt(h));
    return cols;
}

// ((z d/dt)^{n+1} - q) J, which must vanish on P^n.
inline CohSeries<Rational> quantum_de_residual(int n, int D) {
    auto j = j_function(n, D);
    const auto h = j.algebra()->basis(1);
    auto r = j;
    for (int k = 0; k <= n; ++k) r = r.z_dt(h);
    for (int d = 0; d < D; ++d)
        for (const auto& [p, c] : j.slot(d)) r.add(d + 1, p, -c);
    return r;
}

// z^mu N_{a,d}(z) = N_{a,d}(1) z^{-(rho(d) + n/2 - |a|)}: the z-power p of component b obeys
// p + |b| = |a| - rho(d).
inline void check_homogeneity(const DescendantData& dd) {
    const auto& alg = *dd.alg;
    for (std::size_t a = 0; a < dd.N.size(); ++a)
        for (int d = 0; d <= dd.order; ++d)
            for (const auto& [p, c] : dd.N[a][d])
                for (std::size_t b = 0; b < alg.rank(); ++b) {
                    if (sgn(c[b]) == 0) continue;
                    if (p + alg.half_degree(b) != alg.half_degree(a) - dd.rho_of(d))
                        throw std::logic_error("homogeneity violated at a=" + std::to_string(a) + ", d=" +
                                               std::to_string(d) + ", z^" + std::to_string(p) + ", " + alg.label(b));
                }
}

inline DescendantData extract_descendants(int n, int D) {
    auto cols = fundsol_columns(n, D);
    DescendantData dd;
    dd.alg = cols.front().algebra();
    dd.order = D;
    dd.rho = dd.alg->basis(1) * Rational(n + 1);
    dd.rho_degree = n + 1;
    dd.h2_index = 1;
    for (const auto& col : cols) {
        std::vector<ZLaurent<Rational>> row;
        std::vector<CohElement<Rational>> ones;
        for (int d = 0; d <= D; ++d) {
            row.push_back(col.slot(d));
            ones.push_back(col.at_z_one(d));
        }
        dd.N.push_back(std::move(row));
        dd.N_at_one.push_back(std::move(ones));
    }
    check_homogeneity(dd);
    return dd;
}

inline nlohmann::json descendants_to_json(const DescendantData& dd) {
    auto elem = [](const CohElement<Rational>& e) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& v : e.coeffs()) a.push_back(v.get_str());
        return a;
    };
    nlohmann::json j;
    j["algebra"] = algebra_to_json(*dd.alg);
    j["order"] = dd.order;
    j["rho"] = elem(dd.rho);
    j["rho_degree"] = dd.rho_degree;
    j["h2_index"] = dd.h2_index;
    nlohmann::json N = nlohmann::json::array();
    for (const auto& row : dd.N) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& slot : row) {
            nlohmann::json js = nlohmann::json::array();
            for (const auto& [p, c] : slot) js.push_back({p, elem(c)});
            jr.push_back(js);
        }
        N.push_back(jr);
    }
    j["N"] = N;
    return j;
}

// Reads the format written by descendants_to_json; N_{a,d}(1) is recomputed and homogeneity enforced.
inline DescendantData descendants_from_json(const nlohmann::json& j) {
    DescendantData dd;
    try {
        dd.alg = algebra_from_json(j.at("algebra"));
        const auto& alg = *dd.alg;
        auto elem = [&](const nlohmann::json& a) {
            if (a.size() != alg.rank()) throw std::invalid_argument("class has wrong number of coefficients");
            CohElement<Rational> e(alg.rank());
            for (std::size_t i = 0; i < alg.rank(); ++i) e[i] = json_rational(a[i]);
            return e;
        };
        dd.order = j.at("order").get<int>();
        dd.rho = elem(j.at("rho"));
        dd.rho_degree = j.at("rho_degree").get<int>();
        dd.h2_index = j.value("h2_index", 1);
        if (dd.h2_index < 0 || static_cast<std::size_t>(dd.h2_index) >= alg.rank() || alg.degree(dd.h2_index) != 2)
            throw std::invalid_argument("h2_index must name a degree-2 basis element");
        const auto& N = j.at("N");
        if (N.size() != alg.rank()) throw std::invalid_argument("N needs one row per basis element");
        for (const auto& row : N) {
            if (static_cast<int>(row.size()) != dd.order + 1) throw std::invalid_argument("N rows need order+1 slots");
            std::vector<ZLaurent<Rational>> r;
            std::vector<CohElement<Rational>> ones;
            for (const auto& slot : row) {
                ZLaurent<Rational> s;
                CohElement<Rational> one = alg.zero();
                for (const auto& term : slot) {
                    auto c = elem(term.at(1));
                    zl_add_term(s, term.at(0).get<int>(), c);
                    one += c;
                }
                r.push_back(std::move(s));
                ones.push_back(std::move(one));
            }
            dd.N.push_back(std::move(r));
            dd.N_at_one.push_back(std::move(ones));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed descendant JSON: ") + e.what());
    }
    check_homogeneity(dd);
    return dd;
}

}  // namespace qserre
