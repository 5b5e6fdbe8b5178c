#include <gtest/gtest.h>

#include "awf/gmodel.hpp"

using namespace awf;

namespace {

constexpr SUq2Gen A = SUq2Gen::a, B = SUq2Gen::b, Bs = SUq2Gen::b_star;

}  // namespace

TEST(GModel, AlphabetClosedUnderAdjoint)
{
    GGeneratorSystem<ExactField> g{ExactField(0.5)};
    for (const auto& x : g_alphabet()) {
        const auto w = g.generator(x);
        EXPECT_EQ(w.size(), 2u);
        EXPECT_EQ(g.space().normalize(g.space().adjoint(w)), g.space().normalize(g.generator({x.x, !x.adjoint})));
    }
}

TEST(GModel, FactorizationExamples)
{
    M1M2GeneratorSystem m(0.5);
    EXPECT_EQ(m.factorize({{A, false}}), m.u() * m.v(A));
    EXPECT_EQ(m.factorize({{B, false}}), m.u() * m.v(B));
    EXPECT_EQ(m.factorize({{B, true}}), m.v(B, true) * m.u(-1));
    EXPECT_THROW(m.factorize({}), std::invalid_argument);
}

TEST(GModel, FactorizationIsAnIdentityInTheAmbientAlgebra)
{
    // S x = (S T)(T* x) reduces to the same normal form
    GGeneratorSystem<ExactField> g{ExactField(0.5)};
    for (const auto& x : g_alphabet()) {
        const auto fac = x.adjoint ? g.space().adjoint(g.m2_generator(x.x)) * g.space().adjoint(g.u())
                                   : g.u() * g.m2_generator(x.x);
        EXPECT_EQ(g.space().normalize(fac), g.space().normalize(g.generator(x))) << to_string(x);
    }
}

TEST(GModel, TensorImages)
{
    const double q = 0.5;
    // (1(x)S*) b = |b|
    const auto tb = tensor_image(q, m2_series({2}), 6);
    for (std::size_t n = 0; n < 6; ++n)
        EXPECT_NEAR(std::abs(tb.coefficient(TensorMono::e(n, n, 0)) - std::pow(q, n)), 0.0, 1e-15);
    const auto tbs = tensor_image(q, m2_series({3}), 6);
    EXPECT_NEAR(std::abs(tbs.coefficient(TensorMono::e(3, 3, -2)) - std::pow(q, 3)), 0.0, 1e-15);
    // ((1(x)S*) b)((1(x)S*) b)* = sum q^{2n} e(n,n) (x) S^0
    const auto bb = tensor_image(q, m2_series({2, 6}), 6);
    EXPECT_EQ(bb.size(), 6u);
    for (std::size_t n = 0; n < 6; ++n)
        EXPECT_NEAR(std::abs(bb.coefficient(TensorMono::e(n, n, 0)) - std::pow(q, 2.0 * n)), 0.0, 1e-15);
}

TEST(GModel, M2NormalForm)
{
    const double q = 0.5;
    const auto a = m2_normal_form(q, {0}, 5);
    // (1(x)S*) a = sum sqrt(1 - q^{2n}) f(n-1,n)
    for (std::size_t n = 1; n < 5; ++n)
        EXPECT_NEAR(std::abs(a.coefficient({n - 1, n, 0}) - std::sqrt(1 - std::pow(q, 2.0 * n))), 0.0, 1e-15);
    const auto bs = m2_normal_form(q, {3}, 5);
    EXPECT_NEAR(std::abs(bs.coefficient({2, 2, -1}) - q * q), 0.0, 1e-15);
    EXPECT_THROW(m2_normal_form(q, LazyTensorSeries{{{Complex{1.0, 0.0}, Band({HGen::b})}}}, 3), structure_error);
}

TEST(GModel, M2StateMatchesAmbientState)
{
    const double q = 0.6;
    GGeneratorSystem<FloatField> g{FloatField(q)};
    const std::vector<std::vector<long>> words = {{2, 6}, {0, 4}, {4, 0}, {2, 3}, {1, 5, 2, 6}, {0, 2, 4, 6}};
    for (const auto& w : words) {
        FreeLetterWord<Complex> amb;
        for (long c : w)
            amb = amb * (c < 4 ? g.m2_generator(static_cast<SUq2Gen>(c))
                               : g.space().adjoint(g.m2_generator(static_cast<SUq2Gen>(c - 4))));
        EXPECT_NEAR(std::abs(m2_state(q, m2_series(w)).value - g.space().moment(amb)), 0.0, 1e-10);
    }
}

TEST(GModel, Lemma23Examples)
{
    const ExactField f(0.5);
    const auto one = QFunction(1), q2 = QFunction::q_power(2);
    auto v = lemma23_state_identity(f, 0, 0, 0);
    EXPECT_TRUE(v.equal);
    EXPECT_EQ(v.lhs, one - q2);
    v = lemma23_state_identity(f, 2, 2, 0);
    EXPECT_EQ(v.lhs, (one - q2) * QFunction::q_power(4));
    v = lemma23_state_identity(f, 1, 0, 1);
    EXPECT_TRUE(v.equal);
    EXPECT_EQ(v.lhs, QFunction(0));
}

TEST(GModel, Lemma23ExactSuite)
{
    const auto r = check_lemma23(ExactField(0.5));
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.records.size(), 9u * 9u * 9u + 1u);
}

TEST(GModel, CornerNormalization)
{
    const auto e = corner_state_normalization(ExactField(0.5));
    EXPECT_EQ(e.phi, QFunction(1) - QFunction::q_power(2));
    EXPECT_EQ(e.phi0, QFunction(1));
    const auto f = corner_state_normalization(FloatField(0.5));
    EXPECT_NEAR(f.phi.real(), 0.75, 1e-15);
    EXPECT_TRUE(check_corner(ExactField(0.3)).pass());
}

TEST(GModel, UIsHaarUnitaryExact)
{
    GGeneratorSystem<ExactField> g{ExactField(0.5)};
    EXPECT_TRUE(check_haar_unitary(g.space(), g.u(), 8).pass());
}

TEST(GModel, DirectMomentExamples)
{
    GGeneratorSystem<ExactField> g{ExactField(0.5)};
    const auto one = QFunction(1);
    // (Sb)(Sb)* = S bb* S*
    EXPECT_EQ(g.moment({{B, false}, {B, true}}), (one - QFunction::q_power(2)) / (one - QFunction::q_power(4)));
    EXPECT_EQ(g.moment({{B, false}, {Bs, false}}), QFunction(0));
}

TEST(GModel, TheoremConsistencySmall)
{
    TheoremOptions opt;
    opt.words = 25;
    const auto r = check_theorem(0.5, opt);
    EXPECT_TRUE(r.pass()) << r.failures() << " failures";
}

TEST(GModel, FreenessSmall)
{
    FreenessOptions opt;
    opt.max_len = 3;
    const auto r = check_m1_m2_freeness(0.5, opt);
    EXPECT_TRUE(r.pass());
}
