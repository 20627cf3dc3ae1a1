#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qserre/laplace.hpp"

using namespace qserre;

namespace {

double to_d(const Rational& r) { return r.get_d(); }

// psi(a) from a central difference of lgamma
double digamma(double a) {
    const double h = 1e-5;
    return (std::lgamma(a + h) - std::lgamma(a - h)) / (2 * h);
}

ZSeries<Rational> random_zseries(std::mt19937& rng, const AlgebraPtr& alg, const Rational& ell) {
    std::uniform_int_distribution<int> num(-6, 6), off(0, 4), deg(0, 3);
    const auto h = alg->basis(1);
    ZSeries<Rational> K{alg, h * frac(num(rng), 3), h, 3, {}};
    for (int i = 0; i < 6; ++i) {
        CohElement<Rational> c = alg->zero();
        for (std::size_t b = 0; b < alg->rank(); ++b) c[b] = frac(num(rng), 1 + off(rng));
        K.add(deg(rng), ell + off(rng) - 1, c);
    }
    return K;
}

}  // namespace

TEST(Laplace, GammaRatioScalarCases) {
    auto alg = projective_space(2);
    const auto zero = alg->zero();
    const std::vector<std::pair<Rational, Rational>> cases{
        {frac(5, 2), frac(1, 2)}, {frac(1, 3), frac(7, 3)}, {Rational(4), Rational(1)}, {frac(-1, 2), frac(1, 2)},
        {frac(3, 4), frac(7, 4)}, {Rational(2), Rational(5)}};
    for (const auto& [k, ell] : cases) {
        const double want = std::tgamma(to_d(k) + 1) / std::tgamma(to_d(ell));
        const auto got = gamma_ratio(*alg, zero, k, ell);
        EXPECT_NEAR(to_d(got[0]), want, 1e-12 * std::abs(want)) << "k=" << k << " l=" << ell;
        EXPECT_EQ(got[1], 0);
    }
}

TEST(Laplace, GammaRatioFirstOrderInNilpotentPart) {
    // Gamma(H + a) / Gamma(H + b) = Gamma(a)/Gamma(b) (1 + (psi(a) - psi(b)) H + ...)
    auto alg = projective_space(1);
    const auto h = alg->basis(1);
    for (const auto& [k, ell] : std::vector<std::pair<Rational, Rational>>{{frac(5, 2), frac(1, 2)}, {frac(1, 3), frac(10, 3)}}) {
        const auto got = gamma_ratio(*alg, h, k, ell);
        const double a = to_d(k) + 1, b = to_d(ell);
        const double c0 = std::tgamma(a) / std::tgamma(b);
        EXPECT_NEAR(to_d(got[0]), c0, 1e-12 * std::abs(c0));
        EXPECT_NEAR(to_d(got[1]), c0 * (digamma(a) - digamma(b)), 1e-6 * std::abs(c0));
    }
}

TEST(Laplace, AdmissibilityErrors) {
    auto alg = projective_space(2);
    ZSeries<Rational> K{alg, alg->zero(), alg->basis(1), 2, {}};
    K.add(0, frac(1, 2), alg->unit());
    EXPECT_THROW(check_laplace_admissible(K, Rational(1)), std::domain_error);  // l - k not integral
    EXPECT_NO_THROW(check_laplace_admissible(K, frac(3, 2)));

    ZSeries<Rational> K2{alg, alg->zero(), alg->basis(1), 2, {}};
    K2.add(0, Rational(-2), alg->unit());
    EXPECT_THROW(check_laplace_admissible(K2, Rational(2)), std::domain_error);  // 0 in {k0+1, ..., l-1}
    EXPECT_NO_THROW(check_laplace_admissible(K2, Rational(0)));

    EXPECT_THROW(check_kcheck_admissible(frac(1, 3), Rational(1), 4), std::domain_error);
    EXPECT_THROW(check_kcheck_admissible(frac(3, 2), Rational(3), 4), std::domain_error);  // sigma in (n-1)/2 + Z_<=0
    EXPECT_NO_THROW(check_kcheck_admissible(frac(5, 2), Rational(1), 4));
    EXPECT_NO_THROW(check_kcheck_admissible(frac(-5, 2), Rational(0), 4));
}

TEST(Laplace, TransformRulesOnRandomInputs) {
    std::mt19937 rng(5u);
    auto alg = projective_space(2);
    const std::vector<Rational> ells{frac(1, 3), frac(-2, 5), Rational(1), Rational(0), frac(7, 2)};
    for (int trial = 0; trial < 20; ++trial) {
        const Rational ell = ells[static_cast<std::size_t>(trial) % ells.size()];
        const auto K = random_zseries(rng, alg, ell);
        const auto r = fl_rules_check(K, ell);
        EXPECT_TRUE(r.passed) << "trial " << trial << ": " << (r.messages.empty() ? "" : r.messages.front());
    }
}

TEST(Laplace, BoundaryTermsAreReported) {
    const auto dd = extract_descendants(4, 4);
    // alpha = 4 at sigma = 5/2 starts at k0 = 0, where d/dz^-1 K is inadmissible for l = 1
    const auto r = fl_rules_check(kseries_column(dd, frac(5, 2), 4, 4), Rational(1));
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.data.at("boundary_terms"), 1);
    const auto r0 = fl_rules_check(kseries_column(dd, frac(5, 2), 0, 4), Rational(1));
    EXPECT_EQ(r0.data.at("boundary_terms"), 0);
}

TEST(Laplace, KcheckColumnsSolveTheConnection) {
    for (int n = 1; n <= 4; ++n) {
        const int W = 4;
        const auto dd = extract_descendants(n, W);
        const Rational hi = frac(n + 1, 2);
        EXPECT_TRUE(verify_ssc_solution(kcheck_columns(dd, hi, 1, W), hi, n, W).passed) << "n=" << n;
        EXPECT_TRUE(verify_ssc_solution(kcheck_columns(dd, -hi, 0, W), -hi, n, W).passed) << "n=" << n;
        // a generic sigma, with l chosen in the admissible class
        const Rational s = frac(2, 7);
        const Rational ell = s + frac(n - 1, 2);
        EXPECT_TRUE(verify_ssc_solution(kcheck_columns(dd, s, ell, W), s, n, W).passed) << "n=" << n;
    }
}

TEST(Laplace, SolutionCheckRejectsWrongData) {
    const int W = 4;
    const auto dd = extract_descendants(3, W);
    const Rational hi = 2;
    auto cols = kcheck_columns(dd, hi, 1, W);
    // wrong sigma
    EXPECT_FALSE(verify_ssc_solution(cols, hi + 1, 3, W).passed);
    // swapped columns
    std::swap(cols[1], cols[2]);
    EXPECT_FALSE(verify_ssc_solution(cols, hi, 3, W).passed);
}

TEST(Laplace, DeltaRelationAndPairing) {
    for (int n = 1; n <= 4; ++n) {
        const auto dd = extract_descendants(n, 4);
        EXPECT_TRUE(delta_relation_check(dd, 4).passed) << "n=" << n;
        EXPECT_TRUE(kcheck_pairing_check(dd, 4).passed) << "n=" << n;
    }
}

TEST(Laplace, TruncationBeyondDataIsRejected) {
    const auto dd = extract_descendants(2, 3);
    EXPECT_THROW(kseries_column(dd, frac(3, 2), 0, 5), std::invalid_argument);
}
