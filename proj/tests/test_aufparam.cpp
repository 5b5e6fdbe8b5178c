#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "awf/aufparam.hpp"

using namespace awf;

namespace {

FMatrix random_unitary(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    FMatrix z;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            z(i, j) = {g(rng), g(rng)};
    return Eigen::HouseholderQR<FMatrix>(z).householderQ();
}

FMatrix diag(double x, double y)
{
    FMatrix m = FMatrix::Zero();
    m(0, 0) = x;
    m(1, 1) = y;
    return m;
}

}  // namespace

TEST(AufParam, DiagonalExample)
{
    const auto r = classify_F(diag(1.0, 0.5));
    EXPECT_NEAR(r.rho, 0.25, 1e-15);
    EXPECT_NEAR(r.q, 0.5, 1e-15);
    EXPECT_FALSE(r.boundary);
    EXPECT_NEAR(r.rotation_speed, std::log(0.25), 1e-15);
    EXPECT_FALSE(r.warning);
}

TEST(AufParam, IdentityIsBoundary)
{
    const auto r = classify_F(FMatrix::Identity());
    EXPECT_DOUBLE_EQ(r.rho, 1.0);
    EXPECT_TRUE(r.boundary);
}

TEST(AufParam, UnitaryTimesDiagTimesUnitary)
{
    std::mt19937_64 rng(3);
    const FMatrix F = 3.0 * random_unitary(rng) * diag(2.0, 1.0) * random_unitary(rng);
    EXPECT_NEAR(classify_F(F).rho, 0.25, 1e-12);
}

TEST(AufParam, SingularAndNearSingular)
{
    EXPECT_THROW(classify_F(diag(1.0, 0.0)), domain_error);
    FMatrix rank1;
    rank1 << 1.0, 2.0, 2.0, 4.0;
    EXPECT_THROW(classify_F(rank1), domain_error);
    const auto r = classify_F(diag(1.0, 1e-13));
    EXPECT_TRUE(r.warning);
    EXPECT_GT(r.rho, 0.0);
}

TEST(AufParam, InvarianceOverRandomF)
{
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    for (int t = 0; t < 100; ++t) {
        FMatrix F;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                F(i, j) = {g(rng), g(rng)};
        const auto base = classify_F(F);
        EXPECT_GT(base.rho, 0.0);
        EXPECT_LE(base.rho, 1.0);
        EXPECT_NEAR(base.q * base.q, base.rho, 1e-15);
        EXPECT_NEAR(classify_F(scale(rng) * F).rho, base.rho, 1e-12);
        // |F| = (F*F)^{1/2}, conjugated by a random unitary
        Eigen::SelfAdjointEigenSolver<FMatrix> es(F.adjoint() * F);
        const FMatrix absF = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
                             es.eigenvectors().adjoint();
        const FMatrix U = random_unitary(rng);
        EXPECT_NEAR(classify_F(U * absF * U.adjoint()).rho, base.rho, 1e-10);
    }
}

TEST(AufParam, Rotation)
{
    auto r = rotation_report(0.5, 0.0);
    EXPECT_TRUE(r.matrix.isApprox(Eigen::Matrix2d::Identity()));
    EXPECT_NEAR(r.speed, 2.0 * std::log(0.5), 1e-15);
    r = rotation_report(0.5, std::numbers::pi / std::log(0.25));
    EXPECT_NEAR((r.matrix + Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-14);
    EXPECT_THROW(rotation_report(1.5), domain_error);
}
