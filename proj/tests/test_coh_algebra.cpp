#include <gtest/gtest.h>

#include "qserre/coh_algebra.hpp"

using namespace qserre;

namespace {

// H*(P^1 x P^1) with basis 1, a, b, ab.
nlohmann::json p1xp1_json() {
    return nlohmann::json::parse(R"({
      "labels": ["1", "a", "b", "ab"],
      "degrees": [0, 2, 2, 4],
      "dim": 2,
      "struct": [
        [[[0, "1"]], [[1, "1"]], [[2, "1"]], [[3, "1"]]],
        [[[1, "1"]], [], [[3, "1"]], []],
        [[[2, "1"]], [[3, "1"]], [], []],
        [[[3, "1"]], [], [], []]
      ],
      "integration": ["0", "0", "0", "1"]
    })");
}

// Counts associativity failures over all basis triples.
int associativity_failures(const Algebra& alg) {
    int bad = 0;
    for (std::size_t a = 0; a < alg.rank(); ++a)
        for (std::size_t b = 0; b < alg.rank(); ++b)
            for (std::size_t c = 0; c < alg.rank(); ++c)
                if (alg.mul(alg.mul(alg.basis(a), alg.basis(b)), alg.basis(c)) !=
                    alg.mul(alg.basis(a), alg.mul(alg.basis(b), alg.basis(c))))
                    ++bad;
    return bad;
}

}  // namespace

TEST(CohAlgebra, ProjectiveSpaceProducts) {
    auto alg = projective_space(4);
    ASSERT_EQ(alg->rank(), 5u);
    const auto h = alg->basis(1);
    EXPECT_EQ(alg->pow(h, 4), alg->basis(4));
    EXPECT_TRUE(alg->pow(h, 5).is_zero());
    EXPECT_EQ(alg->integrate(alg->basis(4)), 1);
    EXPECT_EQ(alg->integrate(alg->basis(3)), 0);
    EXPECT_THROW(projective_space(0), std::invalid_argument);
}

TEST(CohAlgebra, AssociativityExhaustive) {
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(associativity_failures(*projective_space(n)), 0) << "n=" << n;
    EXPECT_EQ(associativity_failures(*algebra_from_json(p1xp1_json())), 0);
}

TEST(CohAlgebra, JsonRoundTrip) {
    auto alg = algebra_from_json(p1xp1_json());
    auto again = algebra_from_json(algebra_to_json(*alg));
    EXPECT_EQ(algebra_to_json(*again), algebra_to_json(*alg));
    auto p4 = projective_space(4);
    EXPECT_EQ(algebra_to_json(*algebra_from_json(algebra_to_json(*p4))), algebra_to_json(*p4));
}

TEST(CohAlgebra, RejectsBadPresentations) {
    auto j = p1xp1_json();
    j["degrees"][1] = 3;
    EXPECT_THROW(algebra_from_json(j), std::invalid_argument);

    j = p1xp1_json();
    j["struct"][1][2] = nlohmann::json::array({nlohmann::json::array({3, "2"})});  // a*b != b*a
    EXPECT_THROW(algebra_from_json(j), std::invalid_argument);

    j = p1xp1_json();
    j["integration"] = {"0", "0", "0", "0"};
    EXPECT_THROW(algebra_from_json(j), std::invalid_argument);

    j = p1xp1_json();
    j["integration"] = {"1", "0", "0", "1"};
    EXPECT_THROW(algebra_from_json(j), std::invalid_argument);

    j = p1xp1_json();
    j.erase("dim");
    EXPECT_THROW(algebra_from_json(j), std::invalid_argument);
}

TEST(CohAlgebra, RejectsNonAssociativeStructure) {
    // Basis 1, a, b, x, y, p in degrees 0, 2, 2, 4, 4, 6 with a*a = x, a*b = y, a*x = b*x = b*y = p.
    // Graded, commutative, unital, nondegenerate pairing, yet (a*a)*b = p while a*(a*b) = 0.
    auto j = nlohmann::json::parse(R"({
      "labels": ["1", "a", "b", "x", "y", "p"],
      "degrees": [0, 2, 2, 4, 4, 6],
      "dim": 3,
      "struct": [
        [[[0, "1"]], [[1, "1"]], [[2, "1"]], [[3, "1"]], [[4, "1"]], [[5, "1"]]],
        [[[1, "1"]], [[3, "1"]], [[4, "1"]], [[5, "1"]], [], []],
        [[[2, "1"]], [[4, "1"]], [], [[5, "1"]], [[5, "1"]], []],
        [[[3, "1"]], [[5, "1"]], [[5, "1"]], [], [], []],
        [[[4, "1"]], [], [[5, "1"]], [], [], []],
        [[[5, "1"]], [], [], [], [], []]
      ],
      "integration": ["0", "0", "0", "0", "0", "1"]
    })");
    try {
        algebra_from_json(j);
        FAIL() << "non-associative presentation accepted";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("not associative"), std::string::npos) << e.what();
    }
}

TEST(CohAlgebra, ExpLogInverse) {
    auto alg = projective_space(6);
    const auto h = alg->basis(1);
    const auto x = h * frac(3, 7) + alg->basis(2) * Rational(-2) + alg->basis(5);
    EXPECT_EQ(alg->log1p(alg->exp(x) - alg->unit()), x);
    const auto y = alg->unit() * Rational(3) + x;
    EXPECT_EQ(alg->mul(y, alg->inverse(y)), alg->unit());
    EXPECT_THROW(alg->exp(alg->unit()), std::domain_error);
    // exp(aH) exp(bH) = exp((a+b)H)
    EXPECT_EQ(alg->mul(alg->exp(h * Rational(2)), alg->exp(h * Rational(-5))), alg->exp(h * Rational(-3)));
}

TEST(CohAlgebra, GradingOperator) {
    auto alg = projective_space(4);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(alg->mu_eigenvalue(i), Rational(static_cast<long>(i)) - 2);
    EXPECT_EQ(alg->parity(alg->basis(3)), -alg->basis(3));
    EXPECT_EQ(alg->parity(alg->basis(2)), alg->basis(2));
}

TEST(CohAlgebra, ChernDataOfP1AndP4) {
    auto c1 = chern_data(1);
    // Td(P^1) = 1 + H
    EXPECT_EQ(c1.todd, c1.alg->unit() + c1.alg->basis(1));
    auto c4 = chern_data(4);
    // c(TP^4) = (1+H)^5: coefficients are binomials
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(c4.c_total[static_cast<std::size_t>(k)], Rational(binomial(5, k)));
    // Td(P^4) integrates to chi(O) = 1 and its H-coefficient is c_1/2
    EXPECT_EQ(c4.alg->integrate(c4.todd), 1);
    EXPECT_EQ(c4.todd[1], frac(5, 2));
    EXPECT_EQ(c4.c1(), c4.alg->basis(1) * Rational(5));
}

TEST(CohAlgebra, PairingAndMultiplicationMatrices) {
    auto alg = projective_space(3);
    auto p = alg->pairing_matrix();
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) EXPECT_EQ(p(a, b), Rational(a + b == 3 ? 1 : 0));
    auto m = alg->mult_matrix(alg->basis(1));
    for (std::size_t j = 0; j + 1 < 4; ++j) EXPECT_EQ(m(j + 1, j), 1);
    EXPECT_EQ(m(0, 3), 0);
}
