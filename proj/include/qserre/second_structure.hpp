#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qserre/coh_algebra.hpp"
#include "qserre/ratmat.hpp"
#include "qserre/report.hpp"

namespace qserre {

// Small quantum multiplication by H on P^n: H T_j = T_{j+1}, H T_n = q T_0.
inline DenseMatrix<Poly2> quantum_h_matrix(int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    const std::size_t r = static_cast<std::size_t>(n) + 1;
    DenseMatrix<Poly2> c(r, r);
    for (std::size_t j = 0; j + 1 < r; ++j) c(j + 1, j) = Poly2(1);
    c(0, r - 1) = poly_q();
    return c;
}

// Euler multiplication (n+1) H on the small locus.
inline RatMat euler_mult_matrix(int n) {
    auto c = quantum_h_matrix(n);
    c.scale(Poly2(n + 1));
    return {c, Poly2(1)};
}

// (n+1)^{n+1} q - x^{n+1}: the discriminant whose zero locus carries the poles.
inline Poly2 discriminant(int n) {
    Integer p = 1;
    for (int i = 0; i <= n; ++i) p *= n + 1;
    return Rational(p) * poly_q() - poly_x(n + 1);
}

// (E - x)^{-1} as adjugate over determinant, normalized to the denominator discriminant(n).
inline RatMat resolvent(int n) {
    auto m = euler_mult_matrix(n).num();
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= poly_x();
    Poly2 det = determinant(m);
    auto adj = adjugate(m);
    const Poly2 target = discriminant(n);
    if (det == -target) {
        det = target;
        adj = -adj;
    } else if (det != target) {
        throw std::logic_error("unexpected characteristic polynomial " + to_string(det));
    }
    return {adj, det};
}

// diag(mu - 1/2 - sigma)
inline RatMat sigma_shift(const Rational& sigma, int n) {
    const std::size_t r = static_cast<std::size_t>(n) + 1;
    DenseMatrix<Poly2> d(r, r);
    for (std::size_t i = 0; i < r; ++i) d(i, i) = Poly2(Rational(static_cast<long>(i)) - frac(n, 2) - frac(1, 2) - sigma);
    return {d, Poly2(1)};
}

struct SscConnection {
    Rational sigma;
    int n = 0;
    RatMat A_t;  // nabla_t = d/dt + A_t
    RatMat A_x;  // nabla_x = d/dx + A_x
};

inline SscConnection ssc_connection(const Rational& sigma, int n) {
    const RatMat dshift = sigma_shift(sigma, n);
    const RatMat res = resolvent(n);
    const RatMat h{quantum_h_matrix(n), Poly2(1)};
    return {sigma, n, dshift * res * h, -(dshift * res)};
}

// The sigma-free factors M with A_t = D M_t / den and A_x = -D M_x / den (den = discriminant).
struct SscFactors {
    DenseMatrix<Poly2> M_t, M_x;
    Poly2 den;
};

inline SscFactors ssc_factors(int n) {
    const RatMat res = resolvent(n);
    const DenseMatrix<Poly2> h = quantum_h_matrix(n);
    return {res.num() * h, res.num(), res.den()};
}

// d/dt A_x - d/dx A_t + [A_t, A_x] = 0
inline Report flatness_check(const SscConnection& c) {
    Report r("flatness sigma=" + c.sigma.get_str());
    RatMat f = c.A_x.dt() - c.A_t.dx() + c.A_t * c.A_x - c.A_x * c.A_t;
    r.require(f.is_zero(), "curvature does not vanish");
    return r;
}

// ghat(T_a, T_b) = int T_a (E - x)^{-1} T_b
inline RatMat second_metric(int n) {
    auto alg = projective_space(n);
    DenseMatrix<Poly2> p = alg->pairing_matrix().map<Poly2>([](const Rational& v) { return Poly2(v); });
    return RatMat{p, Poly2(1)} * resolvent(n);
}

// d ghat(s1, s2) = ghat(nabla^(sigma) s1, s2) + ghat(s1, nabla^(-sigma) s2) in t and x.
inline Report second_metric_flatness(const Rational& sigma, int n) {
    Report r("second_metric_flatness sigma=" + sigma.get_str());
    const RatMat g = second_metric(n);
    const auto plus = ssc_connection(sigma, n);
    const auto minus = ssc_connection(-sigma, n);
    r.require(g == g.transpose(), "second metric is not symmetric");
    r.require(g.dt() == plus.A_t.transpose() * g + g * minus.A_t, "flatness fails in t");
    r.require(g.dx() == plus.A_x.transpose() * g + g * minus.A_x, "flatness fails in x");
    return r;
}

// Large-radius values at q = 0, x = 1 against -int rho^{n-|a|-|b|} T_a T_b (zero when |a|+|b| > n).
inline Report second_metric_asymptotics(int n) {
    Report r("second_metric_large_radius");
    auto alg = projective_space(n);
    const RatMat g = second_metric(n).substitute(0, 0).substitute(1, 1);
    const auto rho = alg->basis(1) * Rational(n + 1);
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) {
            Rational expected = 0;
            if (a + b <= n)
                expected = -alg->integrate(alg->mul(alg->pow(rho, static_cast<unsigned>(n - a - b)),
                                                    alg->mul(alg->basis(a), alg->basis(b))));
            Rational got = g.constant_entry(a, b);
            if (got != expected)
                r.fail("entry (" + std::to_string(a) + "," + std::to_string(b) + ") = " + got.get_str() + ", expected " +
                       expected.get_str());
        }
    return r;
}

// Delta_sigma T_a = nabla^(sigma)_x T_a, a map from the (sigma+1)- to the sigma-connection.
inline RatMat delta(const Rational& sigma, int n) { return ssc_connection(sigma, n).A_x; }

// Delta = (-1)^{n+1} Delta_{-(n+1)/2} ... Delta_{(n-1)/2}
inline RatMat delta_total(int n) {
    RatMat m = RatMat::identity(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) m = m * delta(frac(-(n + 1), 2) + k, n);
    return (n + 1) % 2 == 0 ? m : -m;
}

// nabla^(sigma) o Delta_sigma = Delta_sigma o nabla^(sigma+1) in t and x.
inline Report delta_intertwining(const Rational& sigma, int n) {
    Report r("delta_intertwining sigma=" + sigma.get_str());
    const RatMat d = delta(sigma, n);
    const auto lo = ssc_connection(sigma, n);
    const auto hi = ssc_connection(sigma + 1, n);
    r.require(d.dt() + lo.A_t * d == d * hi.A_t, "intertwining fails in t");
    r.require(d.dx() + lo.A_x * d == d * hi.A_x, "intertwining fails in x");
    return r;
}

// Covariant derivative of a column vector.
inline RatMat covariant(const RatMat& A, const RatMat& v, std::size_t var, const Poly2& reduce) {
    return (v.derivative(var) + A * v).reduced_by(reduce);
}

// Delta(T_0) = (-nabla_x)^{n+1} T_0 = q^{-1} nabla_t^{n+1} T_0 in the sigma = -(n+1)/2 connection.
inline Report delta_t0_check(int n) {
    Report r("delta_on_unit");
    const std::size_t rk = static_cast<std::size_t>(n) + 1;
    const auto c = ssc_connection(frac(-(n + 1), 2), n);
    const Poly2 disc = discriminant(n);
    const RatMat e0 = RatMat::unit_vector(rk, 0);
    const RatMat viaDelta = delta_total(n) * e0;
    RatMat vx = e0, vt = e0;
    for (int k = 0; k <= n; ++k) {
        vx = -covariant(c.A_x, vx, 1, disc);
        vt = covariant(c.A_t, vt, 0, disc);
    }
    r.require(viaDelta == vx, "Delta(T_0) differs from (-nabla_x)^(n+1) T_0");
    r.require(vx == vt.divided_by(poly_q()), "(-nabla_x)^(n+1) T_0 differs from q^-1 nabla_t^(n+1) T_0");
    return r;
}

}  // namespace qserre
