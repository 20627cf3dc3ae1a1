#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qserre/laplace.hpp"
#include "qserre/lefschetz.hpp"
#include "qserre/ratmat.hpp"
#include "qserre/report.hpp"
#include "qserre/second_structure.hpp"

namespace qserre {

// Span of column vectors over Frac(Q[q, x]) at filtration level p.
struct FiltrationSpan {
    int p = 0;
    std::vector<RatMat> generators;  // linearly independent

    std::size_t dim() const { return generators.size(); }
    bool contains(const RatMat& v) const {
        if (v.is_zero()) return true;
        auto all = generators;
        all.push_back(v);
        return span_rank(all) == generators.size();
    }
};

namespace detail {

// Greedy independent subfamily, keeping the input order.
inline std::vector<RatMat> independent_subset(const std::vector<RatMat>& vecs) {
    std::vector<RatMat> kept;
    for (const auto& v : vecs) {
        if (v.is_zero()) continue;
        kept.push_back(v);
        if (span_rank(kept) < kept.size()) kept.pop_back();
    }
    return kept;
}

inline RatMat column_from(const std::vector<Poly2>& v) {
    DenseMatrix<Poly2> m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return {m, Poly2(1)};
}

// {s : row_i . s = 0} with rows given as row vectors (1 x r).
inline std::vector<RatMat> annihilator(const std::vector<RatMat>& rows, std::size_t r) {
    if (rows.empty()) {
        std::vector<RatMat> all;
        for (std::size_t i = 0; i < r; ++i) all.push_back(RatMat::unit_vector(r, i));
        return all;
    }
    DenseMatrix<Poly2> m(rows.size(), r);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < r; ++j) m(i, j) = rows[i].num(0, j);
    std::vector<RatMat> out;
    for (const auto& v : nullspace(m)) out.push_back(column_from(v));
    return out;
}

// Spans have equal dimension and their union does not grow.
inline bool same_span(const std::vector<RatMat>& a, const std::vector<RatMat>& b) {
    auto all = a;
    all.insert(all.end(), b.begin(), b.end());
    const std::size_t ra = span_rank(a), rb = span_rank(b);
    return ra == rb && span_rank(all) == ra;
}

// Cancel powers of the discriminant, then the monomial content shared by numerators and denominator.
inline RatMat tidy(const RatMat& v, const Poly2& disc) {
    RatMat w = v.reduced_by(disc);
    int mq = w.den().min_degree(0), mx = w.den().min_degree(1);
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j)
            if (!w.num(i, j).is_zero()) {
                mq = std::min(mq, w.num(i, j).min_degree(0));
                mx = std::min(mx, w.num(i, j).min_degree(1));
            }
    Poly2 shift;
    shift.add_term({-mq, -mx}, w.den().terms().size() == 1 ? 1 / w.den().terms().begin()->second : Rational(1));
    DenseMatrix<Poly2> num = w.num();
    num.scale(shift);
    return {num, w.den() * shift};
}

}  // namespace detail

// F^p_loc for p = 0..n, generated by (nabla_x)^k T_a with |a| <= k <= n - p in the sigma = -(n+1)/2 connection.
inline std::vector<FiltrationSpan> floc_filtration(int n) {
    const std::size_t r = static_cast<std::size_t>(n) + 1;
    const auto c = ssc_connection(frac(-(n + 1), 2), n);
    const Poly2 disc = discriminant(n);
    // iter[k][a] = (nabla_x)^k T_a
    std::vector<std::vector<RatMat>> iter(r);
    for (std::size_t a = 0; a < r; ++a) iter[0].push_back(RatMat::unit_vector(r, a));
    for (std::size_t k = 1; k < r; ++k)
        for (std::size_t a = 0; a < r; ++a) iter[k].push_back(covariant(c.A_x, iter[k - 1][a], 1, disc));

    std::vector<FiltrationSpan> out;
    for (int p = 0; p <= n; ++p) {
        std::vector<RatMat> gens;
        for (int k = 0; k <= n - p; ++k)
            for (int a = 0; a <= k; ++a) gens.push_back(iter[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)]);
        out.push_back({p, detail::independent_subset(gens)});
    }
    return out;
}

// F^p_eu = ghat-orthogonal of F^{n-p+1}_loc, p = 0..n.
inline std::vector<FiltrationSpan> feu_filtration(int n, const std::vector<FiltrationSpan>& loc) {
    const std::size_t r = static_cast<std::size_t>(n) + 1;
    const RatMat g = second_metric(n);
    std::vector<FiltrationSpan> out;
    for (int p = 0; p <= n; ++p) {
        std::vector<RatMat> rows;
        if (n - p + 1 <= n)
            for (const auto& gamma : loc[static_cast<std::size_t>(n - p + 1)].generators) rows.push_back((g * gamma).transpose());
        out.push_back({p, detail::independent_subset(detail::annihilator(rows, r))});
    }
    return out;
}

inline std::vector<FiltrationSpan> feu_filtration(int n) { return feu_filtration(n, floc_filtration(n)); }

// Generator of F^n_eu scaled to unit T_0-coefficient.
inline RatMat normalized_top_eu(int n, const std::vector<FiltrationSpan>& eu) {
    const auto& top = eu.at(static_cast<std::size_t>(n));
    if (top.dim() != 1) throw std::domain_error("top eu filtration step is not a line");
    const RatMat& v = top.generators.front();
    const Poly2 lead = v.num(0, 0);
    if (lead.is_zero()) throw std::domain_error("generator has vanishing T_0 coefficient");
    return detail::tidy(RatMat(v.num(), lead), discriminant(n));
}

// The ghat-dual top generator, named for the quintic basis vector it reproduces.
struct TTildeData {
    RatMat ttilde;
    std::vector<RatMat> iterates;  // (nabla^{((n+1)/2)}_x)^k ttilde, k = 0..n
    bool q_independent = false;
};

inline TTildeData ttilde_data(int n, const std::vector<FiltrationSpan>& eu) {
    TTildeData d;
    d.ttilde = normalized_top_eu(n, eu);
    d.q_independent = d.ttilde.dt().is_zero();
    const auto c = ssc_connection(frac(n + 1, 2), n);
    const Poly2 disc = discriminant(n);
    RatMat v = d.ttilde;
    d.iterates.push_back(v);
    for (int k = 1; k <= n; ++k) {
        v = detail::tidy(covariant(c.A_x, v, 1, disc), disc);
        d.iterates.push_back(v);
    }
    return d;
}

// Column vector sum_a c_a x^{-(k+a)} T_a.
inline RatMat x_laurent_column(const std::vector<Rational>& coeffs, int k) {
    DenseMatrix<Poly2> m(coeffs.size(), 1);
    for (std::size_t a = 0; a < coeffs.size(); ++a) m(a, 0) = poly_x(-(k + static_cast<int>(a))) * Poly2(coeffs[a]);
    return {m, Poly2(1)};
}

// Expected q^0 parts of the quintic's ttilde and its x-derivatives.
inline std::vector<RatMat> quintic_ttilde_table() {
    const std::vector<std::vector<Rational>> rows = {
        {1, frac(-125, 3), frac(2125, 3), -5625, 15000},
        {-5, frac(565, 3), frac(-8975, 3), 22875, -60000},
        {30, -1030, 15500, -115500, 300000},
        {-210, 6610, -95300, 697500, -1800000},
        {1680, -48680, 679000, -4905000, 12600000},
    };
    std::vector<RatMat> out;
    for (std::size_t k = 0; k < rows.size(); ++k) out.push_back(x_laurent_column(rows[k], static_cast<int>(k)));
    return out;
}

inline Report ttilde_table_check(const TTildeData& d) {
    Report r("ttilde_table");
    const auto expect = quintic_ttilde_table();
    if (d.iterates.size() != expect.size()) throw std::invalid_argument("table comparison needs n = 4");
    for (std::size_t k = 0; k < expect.size(); ++k) {
        const RatMat got = d.iterates[k].substitute(0, 0);
        if (got != expect[k])
            for (std::size_t a = 0; a < got.rows(); ++a)
                if (got.num(a, 0) != expect[k].num(a, 0) * got.den())
                    r.fail("d_x^" + std::to_string(k) + " entry T_" + std::to_string(a) + ": got " + got.entry_string(a, 0) +
                           ", expected " + expect[k].entry_string(a, 0));
    }
    r.data["q_independent"] = d.q_independent;
    if (!d.q_independent) r.note("ttilde depends on q; only the q^0 part was compared");
    return r;
}

// nabla_t F^p subset F^{p-1} and nabla_x F^p subset F^{p-1}.
inline Report griffiths_check(const std::vector<FiltrationSpan>& f, const Rational& sigma, int n, const std::string& name) {
    Report r("griffiths_" + name);
    const auto c = ssc_connection(sigma, n);
    const Poly2 disc = discriminant(n);
    for (std::size_t p = 1; p < f.size(); ++p)
        for (std::size_t i = 0; i < f[p].generators.size(); ++i) {
            const auto& v = f[p].generators[i];
            if (!f[p - 1].contains(covariant(c.A_t, v, 0, disc)))
                r.fail("nabla_t of generator " + std::to_string(i) + " of F^" + std::to_string(p) + " leaves F^" + std::to_string(p - 1));
            if (!f[p - 1].contains(covariant(c.A_x, v, 1, disc)))
                r.fail("nabla_x of generator " + std::to_string(i) + " of F^" + std::to_string(p) + " leaves F^" + std::to_string(p - 1));
        }
    return r;
}

// Nestedness, dim F^p_loc = n + 1 - p, dim F^p_loc + dim F^{n-p+1}_eu = n + 1,
// and (F^p_eu)^perp = F^{n-p+1}_loc.
inline Report filtration_structure_check(int n, const std::vector<FiltrationSpan>& loc, const std::vector<FiltrationSpan>& eu) {
    Report r("filtration_structure");
    const std::size_t rk = static_cast<std::size_t>(n) + 1;
    const RatMat g = second_metric(n);
    nlohmann::json dims = nlohmann::json::array();
    for (int p = 0; p <= n; ++p) {
        const auto& lp = loc[static_cast<std::size_t>(p)];
        const auto& ep = eu[static_cast<std::size_t>(p)];
        dims.push_back({{"p", p}, {"loc", lp.dim()}, {"eu", ep.dim()}});
        const std::string tag = " at p = " + std::to_string(p);
        r.require(lp.dim() == rk - static_cast<std::size_t>(p), "dim F_loc" + tag);
        if (p > 0) {
            for (const auto& v : lp.generators)
                r.require(loc[static_cast<std::size_t>(p - 1)].contains(v), "F_loc not nested" + tag);
            for (const auto& v : ep.generators)
                r.require(eu[static_cast<std::size_t>(p - 1)].contains(v), "F_eu not nested" + tag);
        }
        const std::size_t comp = static_cast<std::size_t>(n - p + 1);
        const std::size_t loc_dim = comp <= static_cast<std::size_t>(n) ? loc[comp].dim() : 0;
        r.require(ep.dim() + loc_dim == rk, "dim F_eu^p + dim F_loc^{n-p+1} != n + 1" + tag);

        std::vector<RatMat> rows;
        for (const auto& s : ep.generators) rows.push_back(s.transpose() * g);
        const auto perp = detail::independent_subset(detail::annihilator(rows, rk));
        const std::vector<RatMat> target = comp <= static_cast<std::size_t>(n) ? loc[comp].generators : std::vector<RatMat>{};
        r.require(perp.size() == target.size() && (target.empty() || detail::same_span(perp, target)),
                  "(F_eu^p)^perp != F_loc^{n-p+1}" + tag);
    }
    r.data["dimensions"] = dims;
    return r;
}

// x^{-5} I_0^eu(t - 5 log x, 1) as a section with prefactor e^{tH}.
inline TwistedSection<Rational> shifted_ieu(const DescendantData& dd, int W) {
    const auto& alg = *dd.alg;
    const auto h = alg.basis(static_cast<std::size_t>(dd.h2_index));
    const int n = alg.dim();
    auto ie = i_function(Twist::Euler, dd, 0);
    TwistedSection<Rational> s(dd.alg, h, W);
    for (int d = 0; d <= W; ++d) s.add_power(d, Rational(dd.rho_of(d) + n + 1), dd.rho, ie.at_z_one(d));
    return s;
}

// Khat^{(sigma,1)}(v) = sum_a v_a Khat_a for a vector whose denominator is a monomial.
inline TwistedSection<Rational> apply_kcheck(const std::vector<TwistedSection<Rational>>& cols, const RatMat& v) {
    const Poly2& den = v.den();
    if (den.terms().size() != 1) throw std::domain_error("vector entries must be Laurent polynomials in (q, x)");
    const auto& [ex, c] = *den.terms().begin();
    Poly2 inv;
    inv.add_term({-ex[0], -ex[1]}, 1 / c);
    auto out = cols.at(0).empty_like();
    for (std::size_t a = 0; a < cols.size(); ++a) out = out + cols[a].times_poly(v.num(a, 0) * inv);
    return out;
}

// Khat^{((n+1)/2,1)}(ttilde) against c x^{-(n+1)} I_0^eu(t - (n+1) log x, 1). The constant c is read off the
// leading term unless forced.
inline Report kcheck_ttilde(const DescendantData& dd, const RatMat& ttilde, int W, std::optional<Rational> forced = {}) {
    Report r("kcheck_ttilde");
    const int n = dd.alg->dim();
    const auto cols = kcheck_columns(dd, frac(n + 1, 2), Rational(1), W);
    const auto lhs = apply_kcheck(cols, ttilde);
    const auto base = shifted_ieu(dd, W);
    if (base.is_zero() || lhs.is_zero()) {
        r.fail("empty section");
        return r;
    }
    const auto& [key, bc] = *base.terms().begin();
    auto it = lhs.terms().find(key);
    Rational c = 0;
    if (it != lhs.terms().end())
        for (std::size_t i = 0; i < bc.size(); ++i)
            if (sgn(bc[i]) != 0) {
                c = it->second.get(i) / bc[i];
                break;
            }
    r.data["constant"] = c.get_str();
    r.data["W"] = W;
    const Rational used = forced ? *forced : c;
    if (forced) r.data["forced_constant"] = used.get_str();
    const auto res = lhs - base.times(used);
    if (!res.is_zero()) {
        int lowest = res.terms().begin()->first.d;
        r.data["lowest_residual_degree"] = lowest;
        r.fail("residual of " + std::to_string(res.terms().size()) + " terms, first at " + res.terms().begin()->first.to_string());
    }
    return r;
}

}  // namespace qserre
