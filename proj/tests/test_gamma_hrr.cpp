#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qserre/gamma_hrr.hpp"

using namespace qserre;

namespace {

// sum_{m>=1} m^-k by direct summation with an Euler-Maclaurin tail
double zeta_by_summation(int k) {
    const int N = 2000;
    double s = 0;
    for (int m = N; m >= 1; --m) s += std::pow(m, -k);
    const double n = N;
    return s + std::pow(n, 1 - k) / (k - 1) - std::pow(n, -k) / 2 + k * std::pow(n, -k - 1) / 12;
}

}  // namespace

TEST(GammaHrr, ZetaConstants) {
    const double pi = std::numbers::pi;
    EXPECT_NEAR(detail::zeta(2), pi * pi / 6, 1e-15);
    EXPECT_NEAR(detail::zeta(4), std::pow(pi, 4) / 90, 1e-15);
    EXPECT_NEAR(detail::zeta(6), std::pow(pi, 6) / 945, 1e-15);
    EXPECT_NEAR(detail::zeta(8), std::pow(pi, 8) / 9450, 1e-15);
    for (int k = 2; k <= 9; ++k) EXPECT_NEAR(detail::zeta(k), zeta_by_summation(k), 1e-13) << "k=" << k;
    EXPECT_THROW(detail::zeta(10), std::out_of_range);
}

TEST(GammaHrr, LogGammaSeriesAgainstLgamma) {
    // Coefficients of log Gamma(1 + H) on P^8 are the Taylor coefficients of lgamma(1 + y) through y^8.
    auto alg = projective_space(8);
    const auto lg = detail::log_gamma_1p(*alg, convert<Complex>(alg->basis(1)));
    for (double y : {0.03, -0.05, 0.08}) {
        double s = 0;
        for (std::size_t k = 1; k <= 8; ++k) s += lg[k].real() * std::pow(y, static_cast<int>(k));
        EXPECT_NEAR(s, std::lgamma(1 + y), 2e-10) << "y=" << y;
    }
    EXPECT_NEAR(lg[0].real(), 0, 0);
    EXPECT_NEAR(lg[1].real(), -detail::kEulerGamma, 0);
}

TEST(GammaHrr, GammaClassOfProjectiveLine) {
    const auto g = gamma_class(1);
    EXPECT_NEAR(g.value[0].real(), 1, 1e-15);
    EXPECT_NEAR(g.value[1].real(), -2 * 0.5772156649015329, 1e-15);
    EXPECT_TRUE(g.finite());
}

TEST(GammaHrr, GammaProductGivesTodd) {
    for (int n = 1; n <= 8; ++n) {
        const auto r = gamma_todd_identity(n, 1e-10);
        EXPECT_TRUE(r.passed) << "n=" << n;
        EXPECT_LT(r.data.at("max_deviation").get<double>(), 1e-12);
    }
    EXPECT_FALSE(gamma_todd_identity(8, 1e-30).passed);
    EXPECT_THROW(gamma_todd_identity(9, 1e-10), std::invalid_argument);
}

TEST(GammaHrr, EulerCharacteristicsOfLineBundles) {
    for (int n = 1; n <= 6; ++n)
        for (int a = -n - 3; a <= 6; ++a)
            for (int b = -2; b <= 2; ++b) {
                // chi(O(m)) = C(n+m, n) for m >= -n and (-1)^n C(-m-1, n) below
                const int m = a - b;
                const Rational want = m >= -n ? Rational(binomial(n + m, n))
                                              : Rational((n % 2 == 0 ? 1 : -1) * binomial(-m - 1, n));
                EXPECT_EQ(euler_pairing(a, b, n), want) << "n=" << n << " m=" << m;
                const Complex g = euler_pairing_gamma(a, b, n);
                EXPECT_NEAR(g.real(), want.get_d(), 1e-9 * std::max(1.0, std::abs(want.get_d())));
                EXPECT_NEAR(g.imag(), 0, 1e-9 * std::max(1.0, std::abs(want.get_d())));
            }
}

TEST(GammaHrr, SerreDuality) {
    for (int n = 1; n <= 6; ++n)
        for (int m = -8; m <= 8; ++m)
            EXPECT_EQ(euler_pairing(m, 0, n), (n % 2 == 0 ? 1 : -1) * euler_pairing(-m - n - 1, 0, n));
}

TEST(GammaHrr, SuiteChecks) {
    for (int n = 1; n <= 6; ++n) {
        EXPECT_TRUE(hrr_check(n, 10, 1e-10).passed) << "n=" << n;
        for (int k : {0, 1, 3, n + 1}) EXPECT_TRUE(selfintersection_check(k, n).passed) << "n=" << n << " k=" << k;
    }
    EXPECT_FALSE(hrr_check(4, 10, 1e-25).passed);
}
