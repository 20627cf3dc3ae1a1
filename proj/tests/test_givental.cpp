#include <gtest/gtest.h>

#include "qserre/givental.hpp"

using namespace qserre;

TEST(Givental, QuantumDifferentialEquationHolds) {
    for (int n = 1; n <= 5; ++n) EXPECT_TRUE(quantum_de_residual(n, 6).is_zero()) << "n=" << n;
}

TEST(Givental, JFunctionOfProjectiveLine) {
    // prod_{k<=d} (H + k z)^{-2} = (d!)^{-2} z^{-2d} (1 - 2 H_d H / z) with H_d the harmonic number
    const auto j = j_function(1, 8);
    Rational harmonic = 0;
    for (int d = 1; d <= 8; ++d) {
        harmonic += frac(1, d);
        const Rational inv_sq = frac(1, factorial(static_cast<unsigned long>(d)) * factorial(static_cast<unsigned long>(d)));
        EXPECT_EQ(j.coeff(d, -2 * d)[0], inv_sq);
        EXPECT_EQ(j.coeff(d, -2 * d - 1)[1], -2 * harmonic * inv_sq);
        EXPECT_TRUE(j.coeff(d, -2 * d + 1).is_zero());
    }
}

TEST(Givental, JFunctionLeadingTermsOfP4) {
    // Constant part of prod_{k<=d} (H + k z)^{-5} is (d!)^{-5} z^{-5d}.
    const auto j = j_function(4, 5);
    for (int d = 0; d <= 5; ++d) {
        const Integer f = factorial(static_cast<unsigned long>(d));
        EXPECT_EQ(j.coeff(d, -5 * d)[0], frac(1, f * f * f * f * f));
    }
}

TEST(Givental, DescendantsAreHomogeneous) {
    for (int n = 1; n <= 5; ++n) {
        const auto dd = extract_descendants(n, 5);
        EXPECT_NO_THROW(check_homogeneity(dd));
        EXPECT_EQ(dd.N.size(), static_cast<std::size_t>(n + 1));
        // N_{a,0} = T_a
        for (std::size_t a = 0; a <= static_cast<std::size_t>(n); ++a) EXPECT_EQ(dd.N_at_one[a][0], dd.alg->basis(a));
    }
}

TEST(Givental, HomogeneityViolationIsDetected) {
    auto dd = extract_descendants(2, 3);
    zl_add_term(dd.N[0][2], 0, dd.alg->basis(2));
    EXPECT_THROW(check_homogeneity(dd), std::logic_error);
}

TEST(Givental, JsonRoundTrip) {
    const auto dd = extract_descendants(3, 4);
    const auto j = descendants_to_json(dd);
    const auto back = descendants_from_json(j);
    EXPECT_EQ(descendants_to_json(back), j);
    for (std::size_t a = 0; a < dd.N.size(); ++a)
        for (int d = 0; d <= dd.order; ++d) EXPECT_EQ(back.N_at_one[a][static_cast<std::size_t>(d)], dd.N_at_one[a][static_cast<std::size_t>(d)]);

    auto bad = j;
    bad["N"].erase(bad["N"].begin());
    EXPECT_THROW(descendants_from_json(bad), std::invalid_argument);
    bad = j;
    bad["h2_index"] = 0;
    EXPECT_THROW(descendants_from_json(bad), std::invalid_argument);
    bad = j;
    bad["N"][1][2][0][0] = 5;  // shift a z-power: homogeneity breaks
    EXPECT_ANY_THROW(descendants_from_json(bad));
}

TEST(Givental, RejectsNegativeOrder) { EXPECT_THROW(j_function(2, -1), std::invalid_argument); }
