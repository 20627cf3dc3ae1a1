#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qserre/coh_algebra.hpp"
#include "qserre/givental.hpp"
#include "qserre/lefschetz.hpp"
#include "qserre/report.hpp"
#include "qserre/second_structure.hpp"

namespace qserre {

// Key (d, e, m) of the monomial q^d x^{-e} (log x)^m.
struct SectionKey {
    int d = 0;
    Rational e;
    int m = 0;
    friend bool operator<(const SectionKey& a, const SectionKey& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.e != b.e) return a.e < b.e;
        return a.m < b.m;
    }
    friend bool operator==(const SectionKey& a, const SectionKey& b) { return a.d == b.d && a.e == b.e && a.m == b.m; }
    std::string to_string() const {
        return "q^" + std::to_string(d) + " x^(" + Rational(-e).get_str() + ") log(x)^" + std::to_string(m);
    }
};

// e^{t c} * sum c_{d,e,m} q^d x^{-e} (log x)^m, truncated to q-degree d <= max_degree. Since each
// q^d term also carries x^{-(n+1)d} this is the truncation in w = q x^{-(n+1)}.
template <class T = Rational>
class TwistedSection {
public:
    using Terms = std::map<SectionKey, CohElement<T>>;

    TwistedSection() = default;
    TwistedSection(AlgebraPtr alg, CohElement<T> t_exponent, int max_degree)
        : alg_(std::move(alg)), texp_(alg_->normalize(t_exponent)), W_(max_degree) {}

    const AlgebraPtr& algebra() const { return alg_; }
    const CohElement<T>& t_exponent() const { return texp_; }
    int max_degree() const { return W_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(int d, const Rational& e, int m, const CohElement<T>& c) {
        if (d > W_ || c.is_zero()) return;
        SectionKey k{d, e, m};
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, alg_->normalize(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    // c q^d x^{-gamma-e} with nilpotent gamma, expanded through x^{-gamma} = sum (-gamma log x)^m / m!.
    void add_power(int d, const Rational& e, const CohElement<T>& gamma, const CohElement<T>& c) {
        CohElement<T> g = alg_->normalize(gamma);
        if (!scalar_is_zero(g[0])) throw std::domain_error("the exponent class must have vanishing degree-0 part");
        CohElement<T> term = alg_->normalize(c);
        const CohElement<T> neg = -g;
        for (int m = 0; m <= alg_->nilpotency_order(); ++m) {
            if (term.is_zero()) break;
            add(d, e, m, term);
            term = alg_->mul(term, neg) * from_rational<T>(frac(1, m + 1));
        }
    }

    TwistedSection empty_like() const { return TwistedSection(alg_, texp_, W_); }

    friend TwistedSection operator+(const TwistedSection& a, const TwistedSection& b) { return combine(a, b, 1); }
    friend TwistedSection operator-(const TwistedSection& a, const TwistedSection& b) { return combine(a, b, -1); }

    TwistedSection times(const T& s) const {
        TwistedSection r = empty_like();
        for (const auto& [k, c] : terms_) r.add(k.d, k.e, k.m, c * s);
        return r;
    }
    TwistedSection times_class(const CohElement<T>& a) const {
        TwistedSection r = empty_like();
        for (const auto& [k, c] : terms_) r.add(k.d, k.e, k.m, alg_->mul(a, c));
        return r;
    }
    // Multiply by a polynomial in (q, x).
    TwistedSection times_poly(const Poly2& p) const {
        TwistedSection r = empty_like();
        for (const auto& [ex, coef] : p.terms()) {
            if (ex[0] < 0) throw std::domain_error("negative q-powers would lose truncated terms");
            const T s = from_rational<T>(coef);
            for (const auto& [k, c] : terms_) r.add(k.d + ex[0], k.e - ex[1], k.m, c * s);
        }
        return r;
    }

    // d/dt acts on q^d e^{tc} by (d + c).
    TwistedSection dt() const {
        TwistedSection r = empty_like();
        for (const auto& [k, c] : terms_) {
            r.add(k.d, k.e, k.m, c * from_rational<T>(Rational(k.d)));
            r.add(k.d, k.e, k.m, alg_->mul(texp_, c));
        }
        return r;
    }
    // d/dx on x^{-e} (log x)^m = -e x^{-e-1} (log x)^m + m x^{-e-1} (log x)^{m-1}
    TwistedSection dx() const {
        TwistedSection r = empty_like();
        for (const auto& [k, c] : terms_) {
            r.add(k.d, k.e + 1, k.m, c * from_rational<T>(-k.e));
            if (k.m > 0) r.add(k.d, k.e + 1, k.m - 1, c * from_rational<T>(Rational(k.m)));
        }
        return r;
    }

    TwistedSection truncated(int w) const {
        TwistedSection r(alg_, texp_, std::min(w, W_));
        for (const auto& [k, c] : terms_) r.add(k.d, k.e, k.m, c);
        return r;
    }

    // T_a -> (-1)^{|a|} T_a applied to coefficients and to the e^{tc} prefactor.
    TwistedSection parity() const {
        TwistedSection r(alg_, alg_->parity(texp_), W_);
        for (const auto& [k, c] : terms_) r.add(k.d, k.e, k.m, alg_->parity(c));
        return r;
    }

    friend TwistedSection product(const TwistedSection& a, const TwistedSection& b) {
        TwistedSection r(a.alg_, a.texp_ + b.texp_, std::min(a.W_, b.W_));
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add(ka.d + kb.d, ka.e + kb.e, ka.m + kb.m, a.alg_->mul(ca, cb));
        return r;
    }

    // Integration of every coefficient against the fundamental class.
    std::map<SectionKey, T> integrated() const {
        std::map<SectionKey, T> r;
        for (const auto& [k, c] : terms_) {
            T v = alg_->integrate(c);
            if (!scalar_is_zero(v)) r.emplace(k, v);
        }
        return r;
    }

    std::string describe_first_term() const {
        if (terms_.empty()) return "none";
        const auto& [k, c] = *terms_.begin();
        return k.to_string() + " coefficient " + alg_->format(c);
    }

private:
    static TwistedSection combine(const TwistedSection& a, const TwistedSection& b, int sign) {
        if (a.texp_ != b.texp_) throw std::invalid_argument("sections with different e^{tc} prefactors");
        TwistedSection r(a.alg_, a.texp_, std::min(a.W_, b.W_));
        for (const auto& [k, c] : a.terms_) r.add(k.d, k.e, k.m, c);
        for (const auto& [k, c] : b.terms_) r.add(k.d, k.e, k.m, sign > 0 ? c : -c);
        return r;
    }

    AlgebraPtr alg_;
    CohElement<T> texp_;
    int W_ = 0;
    Terms terms_;
};

// e^{tc} * sum_{d,k} q^d a_{d,k} z^{-gamma-k} with nilpotent gamma.
template <class T = Rational>
struct ZSeries {
    AlgebraPtr alg;
    CohElement<T> gamma;
    CohElement<T> t_exponent;
    int max_degree = 0;
    std::map<std::pair<int, Rational>, CohElement<T>> terms;

    void add(int d, const Rational& k, const CohElement<T>& c) {
        if (d > max_degree || c.is_zero()) return;
        auto key = std::make_pair(d, k);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, alg->normalize(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    ZSeries empty_like() const { return ZSeries{alg, gamma, t_exponent, max_degree, {}}; }

    // z^{-1} K
    ZSeries times_zinv() const {
        ZSeries r = empty_like();
        for (const auto& [key, c] : terms) r.add(key.first, key.second + 1, c);
        return r;
    }
    // d/d(z^{-1}) of z^{-gamma-k} = (gamma + k) z^{-gamma-k+1}
    ZSeries d_zinv() const {
        ZSeries r = empty_like();
        for (const auto& [key, c] : terms) {
            auto f = gamma + alg->template unit<T>() * from_rational<T>(key.second);
            r.add(key.first, key.second - 1, alg->mul(f, c));
        }
        return r;
    }
};

namespace detail {

inline bool is_int(const Rational& r) { return r.get_den() == 1; }

}  // namespace detail

// Throws std::domain_error naming the violated condition if Lap^(l) is undefined on K.
template <class T>
void check_laplace_admissible(const ZSeries<T>& K, const Rational& ell) {
    if (K.terms.empty()) return;
    Rational k0 = K.terms.begin()->first.second;
    for (const auto& [key, c] : K.terms) {
        if (!detail::is_int(ell - key.second))
            throw std::domain_error("inadmissible l: l - k must be an integer (l = " + ell.get_str() + ", k = " +
                                    key.second.get_str() + ")");
        if (key.second < k0) k0 = key.second;
    }
    if (detail::is_int(k0) && k0 <= ell - 2 && k0 + 1 <= 0 && 0 <= ell - 1)
        throw std::domain_error("inadmissible l: 0 lies in {k0+1, ..., l-1} (k0 = " + k0.get_str() + ", l = " +
                                ell.get_str() + ")");
}

// Gamma(gamma + k + 1) / Gamma(gamma + l) for k - l integral, as a ring element.
template <class T>
CohElement<T> gamma_ratio(const Algebra& alg, const CohElement<T>& gamma, const Rational& k, const Rational& ell) {
    auto shifted = [&](const Rational& j) { return gamma + alg.unit<T>() * from_rational<T>(j); };
    CohElement<T> r = alg.unit<T>();
    if (k >= ell) {
        for (Rational j = ell; j <= k; j += 1) r = alg.mul(r, shifted(j));
    } else if (k == ell - 1) {
        // ratio 1
    } else {
        for (Rational j = k + 1; j <= ell - 1; j += 1) r = alg.mul(r, shifted(j));
        r = alg.inverse(r);
    }
    return r;
}

// Truncated Laplace transform: a_k z^{-gamma-k} -> a_k x^{-gamma-k-1} Gamma(gamma+k+1)/Gamma(gamma+l).
template <class T>
TwistedSection<T> truncated_laplace(const ZSeries<T>& K, const Rational& ell) {
    check_laplace_admissible(K, ell);
    const Algebra& alg = *K.alg;
    CohElement<T> gamma = alg.normalize(K.gamma);
    Rational shift = 0;
    if (!scalar_is_zero(gamma[0])) {
        // fold a rational degree-0 part of the exponent into k
        if constexpr (std::is_same_v<T, Rational>) {
            shift = gamma[0];
            gamma[0] = 0;
        } else {
            throw std::domain_error("exponent class must be nilpotent");
        }
    }
    TwistedSection<T> r(K.alg, K.t_exponent, K.max_degree);
    for (const auto& [key, a] : K.terms) {
        const Rational k = key.second + shift;
        auto ratio = gamma_ratio(alg, gamma, k, ell + shift);
        r.add_power(key.first, k + 1, gamma, alg.mul(a, ratio));
    }
    return r;
}

// Conditions under which Kcheck^(sigma, l) is defined.
inline void check_kcheck_admissible(const Rational& sigma, const Rational& ell, int n) {
    if (!detail::is_int(ell - frac(n - 1, 2) - sigma))
        throw std::domain_error("inadmissible (sigma, l): l must be congruent to (n-1)/2 + sigma mod Z");
    const bool ell_positive_int = detail::is_int(ell) && ell > 0;
    const Rational s = sigma - frac(n - 1, 2);
    const bool sigma_bad = detail::is_int(s) && s <= 0;
    if (ell_positive_int && sigma_bad)
        throw std::domain_error("inadmissible (sigma, l): l is a positive integer and sigma lies in (n-1)/2 + Z_{<=0}");
}

// K^(sigma-1)_a = sum_d N_{a,d}(1) e^{t H} q^d z^{-(rho + rho(d) - |a| + (n+1)/2 + sigma - 1)}
inline ZSeries<Rational> kseries_column(const DescendantData& dd, const Rational& sigma, int alpha, int W) {
    const auto& alg = *dd.alg;
    if (W > dd.order) throw std::invalid_argument("descendant data has order below the requested truncation");
    ZSeries<Rational> K{dd.alg, dd.rho, alg.basis(static_cast<std::size_t>(dd.h2_index)), W, {}};
    const int n = alg.dim();
    for (int d = 0; d <= W; ++d) {
        Rational k = Rational(dd.rho_of(d) - alg.half_degree(static_cast<std::size_t>(alpha))) + frac(n - 1, 2) + sigma;
        K.add(d, k, dd.N_at_one[alpha][d]);
    }
    return K;
}

inline TwistedSection<Rational> kcheck_column(const DescendantData& dd, const Rational& sigma, const Rational& ell,
                                              int alpha, int W) {
    check_kcheck_admissible(sigma, ell, dd.alg->dim());
    return truncated_laplace(kseries_column(dd, sigma, alpha, W), ell);
}

inline std::vector<TwistedSection<Rational>> kcheck_columns(const DescendantData& dd, const Rational& sigma,
                                                            const Rational& ell, int W) {
    std::vector<TwistedSection<Rational>> cols;
    for (std::size_t a = 0; a < dd.alg->rank(); ++a) cols.push_back(kcheck_column(dd, sigma, ell, static_cast<int>(a), W));
    return cols;
}

// Both transform rules on one input: Lap(z^{-1} K) = -d/dx Lap(K) and Lap(d/dz^{-1} K) = x Lap(K).
// The second rule needs d/dz^{-1} K, whose exponents start at k0 - 1, to be admissible. When it is not, the
// lowest terms carry a boundary contribution; the rule is then checked on the remaining terms and the
// boundary terms are counted in the report.
template <class T>
Report fl_rules_check(const ZSeries<T>& K, const Rational& ell) {
    Report r("fl_rules");
    auto L = truncated_laplace(K, ell);
    r.require((truncated_laplace(K.times_zinv(), ell) + L.dx()).is_zero(), "Lap(z^-1 K) != -d/dx Lap(K)");
    if (K.terms.empty()) return r;
    Rational k0 = K.terms.begin()->first.second;
    for (const auto& [key, c] : K.terms) k0 = std::min(k0, key.second);
    const Rational kd = k0 - 1;
    const bool derivative_admissible = !(detail::is_int(kd) && kd <= ell - 2 && kd + 1 <= 0 && 0 <= ell - 1);
    ZSeries<T> body = K.empty_like();
    std::size_t boundary = 0;
    for (const auto& [key, c] : K.terms) {
        if (!derivative_admissible && key.second == k0) {
            ++boundary;
            continue;
        }
        body.add(key.first, key.second, c);
    }
    if (!body.terms.empty())
        r.require((truncated_laplace(body.d_zinv(), ell) - truncated_laplace(body, ell).times_poly(poly_x())).is_zero(),
                  "Lap(dK/dz^-1) != x Lap(K)");
    r.data["boundary_terms"] = boundary;
    if (boundary > 0)
        r.note(std::to_string(boundary) + " lowest term(s) at k0 = " + k0.get_str() +
               " excluded from the second rule: d/dz^-1 K is not admissible for l = " + ell.get_str());
    return r;
}

namespace detail {

inline void report_residual(Report& r, const std::string& what, const TwistedSection<Rational>& res) {
    if (!res.is_zero()) r.fail(what + " leaves " + std::to_string(res.terms().size()) + " terms, first " + res.describe_first_term());
}

}  // namespace detail

// Columns K_a of a map intertwining nabla^(sigma) with the trivial connection:
// d K_a = sum_g A_{g a} K_g, checked after clearing the common denominator, for q-degrees <= W.
inline Report verify_ssc_solution(const std::vector<TwistedSection<Rational>>& cols, const Rational& sigma, int n, int W) {
    Report r("ssc_solution sigma=" + sigma.get_str());
    const auto f = ssc_factors(n);
    const RatMat dshift = sigma_shift(sigma, n);
    const DenseMatrix<Poly2> Nt = dshift.num() * f.M_t;
    const DenseMatrix<Poly2> Nx = -(dshift.num() * f.M_x);
    if (cols.size() != static_cast<std::size_t>(n) + 1) throw std::invalid_argument("need one column per basis element");
    for (std::size_t a = 0; a < cols.size(); ++a) {
        auto col = cols[a].truncated(W);
        auto rt = col.dt().times_poly(f.den);
        auto rx = col.dx().times_poly(f.den);
        for (std::size_t g = 0; g < cols.size(); ++g) {
            auto cg = cols[g].truncated(W);
            rt = rt - cg.times_poly(Nt(g, a));
            rx = rx - cg.times_poly(Nx(g, a));
        }
        detail::report_residual(r, "t-equation of column " + std::to_string(a), rt);
        detail::report_residual(r, "x-equation of column " + std::to_string(a), rx);
    }
    r.data["W"] = W;
    return r;
}

// A cohomology-valued section s is flat for nabla^(sigma) when den * ds + Num s = 0 componentwise.
inline Report verify_flat_section(const TwistedSection<Rational>& s, const Rational& sigma, int n, int W) {
    Report r("flat_section sigma=" + sigma.get_str());
    const auto f = ssc_factors(n);
    const RatMat dshift = sigma_shift(sigma, n);
    const DenseMatrix<Poly2> Nt = dshift.num() * f.M_t;
    const DenseMatrix<Poly2> Nx = -(dshift.num() * f.M_x);
    const auto& alg = *s.algebra();
    auto sec = s.truncated(W);
    auto apply = [&](const DenseMatrix<Poly2>& N) {
        auto out = sec.empty_like();
        for (std::size_t b = 0; b < alg.rank(); ++b)
            for (std::size_t g = 0; g < alg.rank(); ++g) {
                if (N(b, g).is_zero()) continue;
                // component g of sec moved to slot b, times N(b, g)
                auto comp = sec.empty_like();
                for (const auto& [k, c] : sec.terms()) comp.add(k.d, k.e, k.m, alg.basis(b) * c[g]);
                out = out + comp.times_poly(N(b, g));
            }
        return out;
    };
    detail::report_residual(r, "t-equation", sec.dt().times_poly(f.den) + apply(Nt));
    detail::report_residual(r, "x-equation", sec.dx().times_poly(f.den) + apply(Nx));
    return r;
}

// Kcheck^(-(n+1)/2, 0) o Delta = rho o Kcheck^((n+1)/2, 1), both sides times the denominator of Delta.
inline Report delta_relation_check(const DescendantData& dd, int W) {
    Report r("delta_relation");
    const int n = dd.alg->dim();
    auto minus = kcheck_columns(dd, frac(-(n + 1), 2), 0, W);
    auto plus = kcheck_columns(dd, frac(n + 1, 2), 1, W);
    const RatMat Delta = delta_total(n);
    for (std::size_t a = 0; a < minus.size(); ++a) {
        auto lhs = minus[a].empty_like();
        for (std::size_t g = 0; g < minus.size(); ++g) lhs = lhs + minus[g].times_poly(Delta.num(g, a));
        auto rhs = plus[a].times_class(dd.rho).times_poly(Delta.den());
        detail::report_residual(r, "column " + std::to_string(a), lhs - rhs);
    }
    r.data["W"] = W;
    return r;
}

// ghat(g1, g2) = (-1)^{n+1} int ((-1)^{deg/2} Kcheck^((n+1)/2,1) g1) Kcheck^(-(n+1)/2,0) g2, times den.
inline Report kcheck_pairing_check(const DescendantData& dd, int W) {
    Report r("kcheck_pairing");
    const int n = dd.alg->dim();
    auto minus = kcheck_columns(dd, frac(-(n + 1), 2), 0, W);
    auto plus = kcheck_columns(dd, frac(n + 1, 2), 1, W);
    const RatMat g = second_metric(n);
    const Rational sign = (n + 1) % 2 == 0 ? 1 : -1;
    for (std::size_t a = 0; a < plus.size(); ++a)
        for (std::size_t b = 0; b < minus.size(); ++b) {
            auto prod = product(plus[a].parity(), minus[b]).times_poly(g.den()).times(sign);
            if (!prod.t_exponent().is_zero()) {
                r.fail("prefactors do not cancel");
                return r;
            }
            std::map<SectionKey, Rational> got = prod.integrated();
            std::map<SectionKey, Rational> want;
            for (const auto& [ex, c] : g.num(a, b).terms())
                if (ex[0] <= W) want.emplace(SectionKey{ex[0], Rational(-ex[1]), 0}, c);
            if (got != want) r.fail("pair (" + std::to_string(a) + "," + std::to_string(b) + ") differs");
        }
    return r;
}

}  // namespace qserre
