#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qserre/givental.hpp"
#include "qserre/report.hpp"
#include "qserre/series.hpp"

namespace qserre {

enum class Twist { Euler, Local };

inline const char* twist_name(Twist k) { return k == Twist::Euler ? "eu" : "loc"; }

// e^{tH/z}-stripped twisted I-function column I_a. Slot d is N_{a,d}(z) times
// prod_{k=1}^{rho(d)} (rho + k z) (Euler) or prod_{k=0}^{rho(d)-1} (-rho - k z) (local).
inline CohSeries<Rational> i_function(Twist kind, const DescendantData& dd, int alpha) {
    const auto& alg = *dd.alg;
    if (alpha < 0 || static_cast<std::size_t>(alpha) >= alg.rank()) throw std::out_of_range("basis index out of range");
    CohSeries<Rational> r(dd.alg, dd.order);
    for (int d = 0; d <= dd.order; ++d) {
        ZLaurent<Rational> f = dd.N[alpha][d];
        const int top = dd.rho_of(d);
        for (int k = (kind == Twist::Euler ? 1 : 0); k <= (kind == Twist::Euler ? top : top - 1); ++k) {
            ZLaurent<Rational> lin = kind == Twist::Euler ? detail::linear(dd.rho, 1, k, alg) : detail::linear(dd.rho, -1, -k, alg);
            f = zl_mul(alg, f, lin);
        }
        r.slot(d) = f;
    }
    return r;
}

inline CohSeries<Rational> i_function(Twist kind, int n, int alpha, int D) {
    return i_function(kind, extract_descendants(n, D), alpha);
}

inline SeriesMatrix<Rational> i_matrix(Twist kind, const DescendantData& dd) {
    std::vector<CohSeries<Rational>> cols;
    for (std::size_t a = 0; a < dd.alg->rank(); ++a) cols.push_back(i_function(kind, dd, static_cast<int>(a)));
    return SeriesMatrix<Rational>::from_columns(cols);
}

struct MirrorMapPair {
    int order = 0;
    Rational sign = 1;  // q -> sign*q realizes tau -> tau + Pi c_1(E)
    UniSeries F;        // z^0 part of I^eu_0
    UniSeries mir_eu;   // Mir_eu(t) = t + mir_eu(q)
    UniSeries mir_loc;  // Mir_loc(t) = t + mir_loc(q)
    UniSeries M_eu, M_loc, F_bar;
    std::vector<Rational> N_table;  // N_table[d-1] = N_d for d = 1..order-1
};

inline MirrorMapPair mirror_maps(const DescendantData& dd) {
    const int D = dd.order;
    if (D < 1) throw std::invalid_argument("mirror maps need order >= 1");
    const auto h2 = static_cast<std::size_t>(dd.h2_index);
    auto ie = i_function(Twist::Euler, dd, 0);
    auto il = i_function(Twist::Local, dd, 0);
    MirrorMapPair m;
    m.order = D;
    m.sign = dd.rho_degree % 2 == 0 ? 1 : -1;
    UniSeries F(D), G(D), Floc(D), Gloc(D);
    for (int d = 0; d <= D; ++d) {
        for (const auto& [p, c] : ie.slot(d))
            if (p > 0) throw std::domain_error("Euler-twisted I-function has positive z-powers");
        F[d] = ie.coeff(d, 0)[0];
        G[d] = ie.coeff(d, -1)[h2];
        Floc[d] = il.coeff(d, 0)[0];
        Gloc[d] = il.coeff(d, -1)[h2];
    }
    if (F[0] != 1) throw std::domain_error("F(0) != 1: malformed input algebra");
    if (Floc != UniSeries::constant(D, 1)) throw std::domain_error("local I-function has a nontrivial z^0 part");
    m.F = F;
    m.mir_eu = G / F;
    m.mir_loc = Gloc;
    // q exp(.) is known one order further; keep order D throughout
    m.M_eu = m.mir_eu.exp().multiply_by_q().truncated(D);
    m.M_loc = m.mir_loc.exp().multiply_by_q().truncated(D);
    UniSeries inner = m.M_eu.revert() * m.sign;
    m.F_bar = m.M_loc.compose(inner) * m.sign;
    auto logf = m.F_bar.divide_by_q().log();
    for (int d = 1; d <= logf.order(); ++d) m.N_table.push_back(logf[d]);
    return m;
}

inline MirrorMapPair mirror_maps(int n, int D) { return mirror_maps(extract_descendants(n, D)); }

// M_loc(s q) = s F_bar(M_eu(q))
inline Report mirror_compatibility_check(const MirrorMapPair& m) {
    Report r("mirror_compatibility");
    auto lhs = m.M_loc.rescale(m.sign);
    auto rhs = m.F_bar.compose(m.M_eu) * m.sign;
    for (int k = 0; k <= std::min(lhs.order(), rhs.order()); ++k)
        if (lhs[k] != rhs[k]) r.fail("coefficient of q^" + std::to_string(k) + " differs");
    return r;
}

inline Report integrality_check(const MirrorMapPair& m) {
    Report r("integrality");
    auto one = [&](const char* name, const UniSeries& s) {
        int k = s.first_nonintegral();
        r.data[name] = k < 0 ? nlohmann::json("integral through q^" + std::to_string(s.order())) : nlohmann::json(k);
        if (k >= 0) r.fail(std::string(name) + " has a non-integral coefficient at q^" + std::to_string(k));
    };
    one("M_eu", m.M_eu);
    one("M_loc", m.M_loc);
    one("F_bar", m.F_bar);
    return r;
}

// I = Linv * V with Linv = Id + O(z^{-1}) and V polynomial in z.
struct LUResult {
    SeriesMatrix<Rational> linv;
    SeriesMatrix<Rational> v;
};

// Degree-by-degree Birkhoff split: the remainder at q^d is cut into its z^{<0} part (Linv) and its
// z^{>=0} part (V).
inline LUResult lu_factorize(const SeriesMatrix<Rational>& I) {
    const std::size_t r = I.rank();
    const int D = I.order();
    auto id = DenseMatrix<Rational>::identity(r);
    if (!(I.slot(0).size() == 1 && I.slot(0).count(0) && I.slot(0).at(0) == id))
        throw std::domain_error("I-matrix must reduce to the identity at q^0");
    LUResult lu{SeriesMatrix<Rational>::identity(r, D), SeriesMatrix<Rational>::identity(r, D)};
    for (int d = 1; d <= D; ++d) {
        SeriesMatrix<Rational>::Slot rem = I.slot(d);
        auto sub = [&](int p, const DenseMatrix<Rational>& m) {
            auto it = rem.find(p);
            if (it == rem.end()) {
                rem.emplace(p, -m);
            } else {
                it->second -= m;
                if (it->second.is_zero()) rem.erase(it);
            }
        };
        for (int a = 1; a < d; ++a)
            for (const auto& [pl, ml] : lu.linv.slot(a))
                for (const auto& [pv, mv] : lu.v.slot(d - a)) sub(pl + pv, ml * mv);
        for (const auto& [p, m] : rem) (p < 0 ? lu.linv : lu.v).add(d, p, m);
    }
    return lu;
}

// Round trip, z-support, triangularity and homogeneity of an LU factorization.
inline Report lu_check(const Algebra& alg, const SeriesMatrix<Rational>& I, const LUResult& lu) {
    Report rep("lu");
    rep.require(lu.linv * lu.v == I, "Linv * V differs from the I-matrix");
    const auto id = DenseMatrix<Rational>::identity(I.rank());
    rep.require(lu.linv.coeff(0, 0) == id && lu.linv.slot(0).size() == 1, "Linv is not the identity at q^0");
    rep.require(lu.v.coeff(0, 0) == id && lu.v.slot(0).size() == 1, "V is not the identity at q^0");
    for (int d = 1; d <= I.order(); ++d) {
        for (const auto& [p, m] : lu.linv.slot(d)) {
            rep.require(p < 0, "Linv has a z^" + std::to_string(p) + " term at q^" + std::to_string(d));
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) {
                    if (sgn(m(i, j)) == 0) continue;
                    rep.require(i > j, "Linv is not strictly lower triangular at q^" + std::to_string(d));
                    rep.require(alg.half_degree(i) + p == alg.half_degree(j), "Linv entry is not homogeneous");
                }
        }
        for (const auto& [p, m] : lu.v.slot(d)) {
            rep.require(p >= 0, "V has a z^" + std::to_string(p) + " term at q^" + std::to_string(d));
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) {
                    if (sgn(m(i, j)) == 0) continue;
                    rep.require(i <= j, "V is not upper triangular at q^" + std::to_string(d));
                    rep.require(alg.half_degree(i) + p == alg.half_degree(j), "V column is not homogeneous");
                }
        }
    }
    return rep;
}

// Checks (g1, e^{-Pi rho/z} g2) = (L_eu(q,-z) g1, L_loc(s q, z) e^{-Pi rho/z} g2) for all basis pairs,
// where L = Linv^{-1} comes from the LU factorizations of both twisted I-matrices. At t = 0 the
// mirror-map arguments are carried by q alone.
inline Report pairing_identity_check(const DescendantData& dd) {
    Report rep("pairing_identity");
    const auto& alg = *dd.alg;
    const std::size_t r = alg.rank();
    const int D = dd.order;
    auto lu_eu = lu_factorize(i_matrix(Twist::Euler, dd));
    auto lu_loc = lu_factorize(i_matrix(Twist::Local, dd));
    const Rational s = dd.rho_degree % 2 == 0 ? 1 : -1;
    auto to_pi = [](const Rational& v) { return PiScalar(v); };

    SeriesMatrix<PiScalar> A = lu_eu.linv.negate_z().inverse().map<PiScalar>(to_pi);
    SeriesMatrix<PiScalar> B = lu_loc.linv.rescale_q(s).inverse().map<PiScalar>(to_pi);

    // X = e^{-Pi rho / z}
    SeriesMatrix<PiScalar> X(r, D);
    DenseMatrix<Rational> rho_m = alg.mult_matrix(dd.rho);
    DenseMatrix<Rational> pw = DenseMatrix<Rational>::identity(r);
    PiScalar coef(1);
    for (int m = 0; m <= alg.nilpotency_order(); ++m) {
        if (pw.is_zero()) break;
        X.add(0, -m, pw.map<PiScalar>(to_pi).scale(coef));
        pw = rho_m * pw;
        coef = coef * (-pi_symbol()) * PiScalar(frac(1, m + 1));
    }
    SeriesMatrix<PiScalar> P(r, D);
    P.add(0, 0, alg.pairing_matrix().map<PiScalar>(to_pi));

    auto lhs = P * X;
    auto rhs = A.transpose() * P * B * X;
    auto diff = rhs - lhs;
    std::size_t shown = 0;
    for (int d = 0; d <= D; ++d)
        for (const auto& [p, m] : diff.slot(d))
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) {
                    if (m(i, j).is_zero()) continue;
                    if (shown++ < kMaxReportedFailures)
                        rep.fail("mismatch at q^" + std::to_string(d) + ", z^" + std::to_string(p) + ", pair (" +
                                 alg.label(i) + ", " + alg.label(j) + "): " + to_string(m(i, j)));
                    else
                        rep.passed = false;
                }
    bool q_independent = true;
    for (int d = 1; d <= D; ++d) q_independent = q_independent && rhs.slot(d).empty();
    rep.data["order"] = D;
    rep.data["rhs_q_independent"] = q_independent;
    rep.data["lhs_terms"] = lhs.slot(0).size();
    return rep;
}

inline Report pairing_identity_check(int n, int D) { return pairing_identity_check(extract_descendants(n, D)); }

}  // namespace qserre
