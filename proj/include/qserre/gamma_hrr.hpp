#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qserre/coh_algebra.hpp"
#include "qserre/report.hpp"

namespace qserre {

using Complex = std::complex<double>;

// Cohomology class with complex double coefficients; comparisons always go through tol.
struct NumericCohElement {
    CohElement<Complex> value;
    double tol = 1e-10;

    double max_deviation(const CohElement<Rational>& exact) const {
        double worst = 0;
        for (std::size_t i = 0; i < std::max(value.size(), exact.size()); ++i)
            worst = std::max(worst, std::abs(value.get(i) - exact.get(i).get_d()));
        return worst;
    }
    bool close_to(const CohElement<Rational>& exact) const { return max_deviation(exact) < tol; }
    bool finite() const {
        for (const auto& c : value.coeffs())
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
        return true;
    }
};

namespace detail {

constexpr double kEulerGamma = 0.577215664901532860606512090082;
// zeta(2) .. zeta(9)
constexpr double kZeta[] = {
    1.644934066848226436472415166646, 1.202056903159594285399738161511, 1.082323233711138191516003696541,
    1.036927755143369926331365486458, 1.017343061984449139714517929790, 1.008349277381922826839797549850,
    1.004077356197944339378685238509, 1.002008392826082214417852769232,
};

inline double zeta(int k) {
    if (k < 2 || k > 9) throw std::out_of_range("zeta constant only tabulated for 2 <= k <= 9");
    return kZeta[k - 2];
}

// log Gamma(1 + y) = -gamma_E y + sum_{k>=2} zeta(k) (-y)^k / k on a nilpotent class y.
inline CohElement<Complex> log_gamma_1p(const Algebra& alg, const CohElement<Complex>& y) {
    CohElement<Complex> r = y * Complex(-kEulerGamma);
    CohElement<Complex> pw = y;
    for (int k = 2; k <= alg.nilpotency_order(); ++k) {
        pw = alg.mul(pw, y);
        if (pw.is_zero()) break;
        r += pw * Complex((k % 2 == 0 ? 1.0 : -1.0) * zeta(k) / k);
    }
    return r;
}

// Multiplies the degree-2k part by s^k.
inline CohElement<Complex> rescale_degrees(const Algebra& alg, const CohElement<Complex>& a, Complex s) {
    CohElement<Complex> r = alg.normalize(a);
    for (std::size_t i = 0; i < alg.rank(); ++i) r[i] *= std::pow(s, alg.half_degree(i));
    return r;
}

inline Complex two_pi_i() { return Complex(0, 2 * std::numbers::pi); }

}  // namespace detail

// Gamma class of T P^n: prod over the n+1 Chern roots H of Gamma(1 + H).
inline NumericCohElement gamma_class(int n) {
    auto alg = projective_space(n);
    const auto h = convert<Complex>(alg->basis(1));
    auto lg = detail::log_gamma_1p(*alg, h) * Complex(n + 1);
    return {alg->exp(lg), 1e-10};
}

// e^{rho/2} prod_i Gamma(1 + H/2 pi i) Gamma(1 - H/2 pi i) against Td(T P^n).
// Assembled from the Gamma class by rescaling degrees and reflecting H -> -H.
inline Report gamma_todd_identity(int n, double tol) {
    Report r("gamma_todd");
    if (n < 1 || n > 8) throw std::invalid_argument("gamma_todd_identity supports 1 <= n <= 8");
    const auto cd = chern_data(n);
    const auto& alg = *cd.alg;
    const auto g = gamma_class(n).value;
    const Complex s = 1.0 / detail::two_pi_i();
    const auto plus = detail::rescale_degrees(alg, g, s);
    const auto minus = detail::rescale_degrees(alg, g, -s);
    const auto half_rho = convert<Complex>(cd.c1()) * Complex(0.5);
    NumericCohElement lhs{alg.mul(alg.exp(half_rho), alg.mul(plus, minus)), tol};
    r.require(lhs.finite(), "non-finite coefficient");

    double worst = 0;
    std::size_t worst_i = 0;
    for (std::size_t i = 0; i < alg.rank(); ++i) {
        double dev = std::abs(lhs.value.get(i) - cd.todd.get(i).get_d());
        if (dev > worst) {
            worst = dev;
            worst_i = i;
        }
    }
    r.data["n"] = n;
    r.data["max_deviation"] = worst;
    if (!(worst < tol)) {
        std::ostringstream os;
        os << "deviation " << worst << " at " << alg.label(worst_i) << " (tol " << tol << ")";
        r.fail(os.str());
    }
    return r;
}

// chi(O(a) (x) O(b)^dual) = int ch(O(a-b)) Td on P^n.
inline Rational euler_pairing(int a, int b, int n) {
    const auto cd = chern_data(n);
    return cd.alg->integrate(cd.alg->mul(cd.ch_line(a - b), cd.todd));
}

// The same pairing assembled from Gamma-framed classes:
// (2 pi i)^{-n} int e^{pi i rho} (Gamma Ch(V)) . (Gamma Ch(W))^parity, Ch = (2 pi i)^{deg/2} ch.
inline Complex euler_pairing_gamma(int a, int b, int n) {
    const auto cd = chern_data(n);
    const auto& alg = *cd.alg;
    const auto g = gamma_class(n).value;
    const Complex tpi = detail::two_pi_i();
    auto framed = [&](int k) {
        return alg.mul(g, detail::rescale_degrees(alg, convert<Complex>(cd.ch_line(k)), tpi));
    };
    const auto rho = detail::rescale_degrees(alg, convert<Complex>(cd.c1()), tpi) * Complex(0.5);
    const auto v = framed(a);
    const auto w = alg.parity(framed(b));
    return alg.integrate(alg.mul(alg.exp(rho), alg.mul(v, w))) / std::pow(tpi, n);
}

// ch(O - O(-k)) ch(V) = e(O(k)) Td(O(k))^{-1} ch(V) for V = O(a).
inline Report selfintersection_check(int k, int n, const std::vector<int>& twists = {0, 1, 2}) {
    Report r("self_intersection");
    const auto cd = chern_data(n);
    const auto& alg = *cd.alg;
    const auto kh = alg.basis(1) * Rational(k);
    const auto lambda = alg.unit() - cd.ch_line(-k);
    const auto euler_td = alg.mul(kh, alg.inverse(todd_of_line(alg, kh)));
    for (int a : twists) {
        const auto v = cd.ch_line(a);
        const auto lhs = alg.mul(lambda, v);
        const auto rhs = alg.mul(euler_td, v);
        if (!(lhs == rhs)) r.fail("mismatch for V = O(" + std::to_string(a) + "): " + alg.format(lhs) + " vs " + alg.format(rhs));
    }
    r.data["k"] = k;
    r.data["n"] = n;
    return r;
}

// chi(O(m)) = binomial(n + m, n) for -n <= m <= mmax, computed both ways.
inline Report hrr_check(int n, int mmax, double tol) {
    Report r("hrr");
    for (int m = -n; m <= mmax; ++m) {
        const Rational chi = euler_pairing(m, 0, n);
        const Rational expect(binomial(n + m, n));
        if (chi != expect) r.fail("chi(O(" + std::to_string(m) + ")) = " + chi.get_str() + ", expected " + expect.get_str());
        const Complex viag = euler_pairing_gamma(m, 0, n);
        if (std::abs(viag - expect.get_d()) > tol * std::max(1.0, expect.get_d()))
            r.fail("gamma route for chi(O(" + std::to_string(m) + ")) gives " + std::to_string(viag.real()) + " + " +
                   std::to_string(viag.imag()) + "i");
    }
    r.data["n"] = n;
    r.data["range"] = {-n, mmax};
    return r;
}

}  // namespace qserre
