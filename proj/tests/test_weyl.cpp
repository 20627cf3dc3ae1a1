#include <gtest/gtest.h>

#include <random>

#include "qserre/weyl.hpp"

using namespace qserre;

namespace {

// Action on Laurent polynomials in (q, x, sigma): d acts as q d/dq.
WeylCoeff act(const WeylOp& op, const WeylCoeff& f) {
    WeylCoeff out;
    for (const auto& [m, c] : op.terms()) {
        WeylCoeff g;
        for (const auto& [e, v] : f.terms()) g.add_term(e, v * rpow(Rational(e[0]), static_cast<unsigned>(m)));
        out += c * g;
    }
    return out;
}

WeylOp random_op(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4), pw(-2, 2), dm(0, 3);
    WeylOp r;
    for (int i = 0; i < 4; ++i)
        r.add(dm(rng), WeylCoeff::monomial({pw(rng), pw(rng), std::abs(pw(rng))}, Rational(num(rng))));
    return r;
}

WeylCoeff random_function(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4), pw(-3, 3);
    WeylCoeff f;
    for (int i = 0; i < 5; ++i) f.add_term({pw(rng), pw(rng), 0}, Rational(num(rng)));
    return f;
}

}  // namespace

TEST(Weyl, CommutationRule) {
    for (int a = -3; a <= 3; ++a) EXPECT_EQ(WeylOp::d() * WeylOp::q(a), WeylOp::q(a) * (WeylOp::d() + WeylOp(a))) << a;
    EXPECT_EQ(WeylOp::d() * WeylOp::x(), WeylOp::x() * WeylOp::d());
    EXPECT_EQ(WeylOp::d(2) * WeylOp::q(), WeylOp::q() * (WeylOp::d() + WeylOp(1)).pow(2));
}

TEST(Weyl, ProductMatchesCompositionOfActions) {
    std::mt19937 rng(3u);
    for (int trial = 0; trial < 30; ++trial) {
        const auto A = random_op(rng), B = random_op(rng), C = random_op(rng);
        const auto f = random_function(rng);
        EXPECT_EQ(act(A * B, f), act(A, act(B, f)));
        EXPECT_EQ((A * B) * C, A * (B * C));
    }
}

TEST(Weyl, QuinticOperatorIdentities) {
    const auto o = build_quintic_ops();
    EXPECT_TRUE(factorization_check(o).passed);
    const auto in = intertwiner_check(o);
    EXPECT_TRUE(in.passed);
    EXPECT_EQ(in.data.at("degree"), 10);
    EXPECT_TRUE(sigma_specialization_check(o).passed);
    // the loc factorization does not hold on the other side
    EXPECT_NE(o.D_loc, WeylOp::d() * o.P_loc);
}

TEST(Weyl, ClosedFormCoefficientsOfPhiEu) {
    // The H^0 coefficient of phi_eu at q^d is (5d+4)!/(d!)^5.
    const auto phi = quintic_phi_eu(6);
    for (int d = 0; d <= 6; ++d) {
        const Integer fd = factorial(static_cast<unsigned long>(d));
        const Rational want = frac(factorial(static_cast<unsigned long>(5 * d + 4)), fd * fd * fd * fd * fd);
        bool found = false;
        for (const auto& [k, c] : phi.terms())
            if (k.d == d && k.e == Rational(5 * d + 5) && k.m == 0) {
                EXPECT_EQ(c[0], want) << "d=" << d;
                found = true;
            }
        EXPECT_TRUE(found) << "d=" << d;
    }
}

TEST(Weyl, OperatorsAnnihilateClosedFormSolutions) {
    const auto o = build_quintic_ops();
    EXPECT_TRUE(annihilate_check(o.D_eu, quintic_phi_eu(10), 10).passed);
    EXPECT_TRUE(annihilate_check(o.D_loc, quintic_phi_loc(10), 10).passed);
    const auto cross = annihilate_check(o.D_eu, quintic_phi_loc(6), 6);
    EXPECT_FALSE(cross.passed);
    EXPECT_EQ(cross.data.at("lowest_residual_degree"), 1);
    const auto perturbed = o.D_eu + WeylOp::q() * WeylOp::d();
    EXPECT_FALSE(annihilate_check(perturbed, quintic_phi_eu(6), 6).passed);
}

TEST(Weyl, UnitOperatorAnnihilatesKcheckOfUnit) {
    const int W = 5;
    for (int n = 1; n <= 4; ++n) {
        const auto dd = extract_descendants(n, W);
        for (const Rational& s : {frac(2, 7), frac(n + 1, 2), frac(-1, 3)}) {
            const auto op = unit_operator(n).substitute_sigma(s);
            EXPECT_TRUE(annihilate_check(op, kcheck_column(dd, s, s + frac(n - 1, 2), 0, W), W).passed) << "n=" << n << " sigma=" << s;
            // the column of T_1 is not annihilated
            EXPECT_FALSE(annihilate_check(op, kcheck_column(dd, s, s + frac(n - 1, 2), 1, W), W).passed) << "n=" << n;
        }
    }
}

TEST(Weyl, SymbolicSigmaMustBeSubstituted) {
    const auto dd = extract_descendants(2, 3);
    EXPECT_TRUE(unit_operator(2).depends_on_sigma());
    EXPECT_THROW(annihilate_check(unit_operator(2), kcheck_column(dd, frac(3, 2), 1, 0, 3), 3), std::invalid_argument);
    EXPECT_THROW(annihilate_check(WeylOp::q(-1), quintic_phi_eu(2), 2), std::invalid_argument);
}
