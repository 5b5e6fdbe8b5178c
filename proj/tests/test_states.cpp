#include <random>

#include <gtest/gtest.h>

#include "awf/states.hpp"

using namespace awf;

namespace {

constexpr SUq2Gen A = SUq2Gen::a, As = SUq2Gen::a_star, B = SUq2Gen::b, Bs = SUq2Gen::b_star;

Word word_of(std::vector<SUq2Gen> g)
{
    std::vector<Symbol> s(g.begin(), g.end());
    return Word(s);
}

Complex direct(double q, std::vector<SUq2Gen> g)
{
    return embed_h_state(q, word_of(std::move(g))).value;
}

}  // namespace

TEST(ClosedForm, TauAndOmega)
{
    const ExactField f(0.5);
    EXPECT_EQ(tau(f, 0), QFunction(1));
    EXPECT_EQ(tau(f, 3), QFunction(0));
    EXPECT_EQ(omega(f, MatrixMono::unit()), QFunction(1));
    EXPECT_EQ(omega(f, MatrixMono::e(2, 3)), QFunction(0));
    EXPECT_EQ(omega(f, MatrixMono::e(2, 2)), (QFunction(1) - QFunction::q_power(2)) * QFunction::q_power(4));
    EXPECT_EQ(omega_tensor_tau(f, TensorMono::e(1, 1, 1)), QFunction(0));
    EXPECT_EQ(omega_tensor_tau(f, TensorMono::e(1, 1, 0)), omega(f, MatrixMono::e(1, 1)));
}

TEST(ClosedForm, PsiValues)
{
    const ExactField f(0.5);
    const auto one = QFunction(1);
    const auto q2 = QFunction::q_power(2);
    EXPECT_EQ(psi_closed_form(f, SUq2Monomial::unit()), one);
    EXPECT_EQ(psi_closed_form(f, SUq2Monomial::make(false, 0, 1, 1)), (one - q2) / (one - QFunction::q_power(4)));
    EXPECT_EQ(psi_closed_form(f, SUq2Monomial::make(false, 1, 0, 0)), QFunction(0));
    EXPECT_EQ(psi_closed_form(f, SUq2Monomial::make(false, 0, 2, 1)), QFunction(0));
    // T b* is invariant under the phase rotation
    EXPECT_EQ(psi_closed_form(f, HMonomial{SUq2Monomial::make(false, 0, 0, 1), 1}),
              (one - q2) / (one - QFunction::q_power(3)));
}

TEST(ClosedForm, StateOnRelationsVanishes)
{
    const ExactField f(0.7);
    const auto psi = psi_oracle(f);
    // a*a + b*b = 1 and aa* + q^2 bb* = 1 in normal form
    auto w = reduce_suq2(f, std::span<const SUq2Gen>(std::vector<SUq2Gen>{As, A}));
    w += reduce_suq2(f, std::span<const SUq2Gen>(std::vector<SUq2Gen>{Bs, B}));
    EXPECT_EQ(psi(w), QFunction(1));
}

TEST(Embedding, BandShape)
{
    const Band band({HGen::a, HGen::b_star, HGen::a_star});
    EXPECT_TRUE(band.diagonal());
    EXPECT_EQ(band.s_power(), -1);
    const Band aa({HGen::a, HGen::a});
    EXPECT_EQ(aa.row_shift(), -2);
    EXPECT_DOUBLE_EQ(aa.coefficient(0.5, 1), 0.0);
    EXPECT_NEAR(aa.coefficient(0.5, 2), std::sqrt((1 - 0.0625) * (1 - 0.25)), 1e-15);
}

TEST(Embedding, MatchesClosedFormOnExamples)
{
    const double q = 0.5;
    EXPECT_NEAR(std::abs(direct(q, {B, Bs}) - (1 - q * q) / (1 - std::pow(q, 4))), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(direct(q, {As, A})), 1.0 - (1 - q * q) / (1 - std::pow(q, 4)), 1e-10);
    EXPECT_NEAR(std::abs(direct(q, {A, B})), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(direct(q, {})), 1.0, 1e-10);
}

// (omega (x) tau) o Phi agrees with psi on random words
class HaarFromEmbedding : public ::testing::TestWithParam<double> {};

TEST_P(HaarFromEmbedding, RandomWords)
{
    const double q = GetParam();
    const FloatField f(q);
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> gen(0, 3);
    std::uniform_int_distribution<int> len(0, 8);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        std::vector<SUq2Gen> w(static_cast<std::size_t>(len(rng)));
        for (auto& g : w)
            g = static_cast<SUq2Gen>(gen(rng));
        const Complex lhs = direct(q, w);
        const Complex rhs = psi_closed_form(f, reduce_suq2(f, std::span<const SUq2Gen>(w)));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    EXPECT_LE(worst, 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Q, HaarFromEmbedding, ::testing::Values(0.3, 0.5, 0.9));

TEST(Embedding, PositivityAndHermitian)
{
    const double q = 0.6;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> gen(0, 3);
    for (int t = 0; t < 50; ++t) {
        std::vector<SUq2Gen> w(5);
        for (auto& g : w)
            g = static_cast<SUq2Gen>(gen(rng));
        std::vector<SUq2Gen> adj;
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            adj.push_back(star(*it));
        std::vector<SUq2Gen> xx = adj;
        xx.insert(xx.end(), w.begin(), w.end());
        const Complex v = direct(q, xx);
        EXPECT_GE(v.real(), -1e-12);
        EXPECT_NEAR(v.imag(), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(direct(q, adj) - std::conj(direct(q, w))), 0.0, 1e-12);
    }
}

TEST(Embedding, CutoffIsCertified)
{
    const auto r = embed_h_state(0.5, word_of({B, Bs}));
    EXPECT_LE(r.tail_bound, 1e-11);
    EXPECT_GT(r.cutoff, 0u);
}

TEST(Embedding, PrecisionErrorBeyondCutoffLimit)
{
    SummationPolicy p;
    p.tolerance = 1e-300;
    p.max_cutoff = 100;
    EXPECT_THROW(embed_h_state(0.99, word_of({B, Bs}), p), precision_error);
}
