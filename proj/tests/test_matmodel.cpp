#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <gtest/gtest.h>

#include "awf/matmodel.hpp"

using namespace awf;
using Big = boost::multiprecision::cpp_bin_float_100;

TEST(MatModel, ConfigValidation)
{
    EXPECT_THROW(build_truncated_rep(TruncationConfig<double>{3, 4, 0.5}), std::invalid_argument);
    EXPECT_THROW(build_truncated_rep(TruncationConfig<double>{8, 1, 0.5}), std::invalid_argument);
    EXPECT_THROW(build_truncated_rep(TruncationConfig<double>{8, 4, 1.0}), domain_error);
}

TEST(MatModel, GeneratorEntries)
{
    const TruncationConfig<double> cfg{8, 3, 0.5};
    const auto rep = build_truncated_rep(cfg);
    EXPECT_NEAR(rep.a.coeff(cfg.index(2, 1), cfg.index(3, 1)), std::sqrt(1 - std::pow(0.5, 6)), 1e-16);
    EXPECT_EQ(rep.a.coeff(cfg.index(0, 0), cfg.index(0, 0)), 0.0);
    EXPECT_NEAR(rep.b.coeff(cfg.index(3, 1), cfg.index(3, 0)), 0.125, 1e-16);
    // hard boundary: b maps the k = K column to zero
    EXPECT_EQ(Eigen::VectorXd(rep.b.col(cfg.index(3, 3))).norm(), 0.0);
}

class RelationsAtQ : public ::testing::TestWithParam<double> {};

TEST_P(RelationsAtQ, InteriorResidualsVanish)
{
    const auto r = check_relations_numeric(TruncationConfig<double>{64, 32, GetParam()});
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.records.size(), 5u);
}

INSTANTIATE_TEST_SUITE_P(Q, RelationsAtQ, ::testing::Values(0.3, 0.5, 0.9));

TEST(MatModel, BoundaryResidualOfSecondRelation)
{
    // at n = N-1 the truncated a* kills the column: (aa* + q^2 bb* - 1) xi = -(1 - q^{2N}) xi
    const double q = 0.5;
    const std::size_t N = 16;
    const TruncationConfig<double> cfg{N, 4, q};
    const auto rep = build_truncated_rep(cfg);
    const Operator<double> r = rep.a * Operator<double>(rep.a.transpose()) +
                               q * q * Operator<double>(rep.b * Operator<double>(rep.b.transpose())) - rep.identity;
    const auto c = cfg.index(N - 1, 0);
    EXPECT_NEAR(r.coeff(c, c), -(1 - std::pow(q, 2.0 * N)), 1e-15);
    EXPECT_GT(relation_residuals(rep)[1].boundary, 0.5);
}

TEST(MatModel, PsiNumericDouble)
{
    const TruncationConfig<double> cfg{64, 4, 0.5};
    const auto v = psi_numeric(SUq2Monomial::make(false, 0, 1, 1), cfg);
    EXPECT_NEAR(v.value, 0.75 / (1 - 0.0625), 1e-15);
    EXPECT_LE(v.deficit_bound, std::pow(0.5, 128) * 1.0001);
}

TEST(MatModel, PsiNumericOperatorForm)
{
    const TruncationConfig<double> cfg{40, 4, 0.5};
    const auto rep = build_truncated_rep(cfg);
    const Operator<double> bbs = rep.b * Operator<double>(rep.b.transpose());
    EXPECT_NEAR(psi_numeric(bbs, cfg).value, 0.75 / (1 - 0.0625), 1e-15);
}

class SeriesAtQ : public ::testing::TestWithParam<double> {};

TEST_P(SeriesAtQ, ClosedFormWithinTailBoundMultiprecision)
{
    const TruncationConfig<Big> cfg{64, 32, Big(GetParam())};
    const auto r = check_psi_series(cfg, 8);
    EXPECT_TRUE(r.pass()) << r.failures() << " failures";
    // 1 + 2 * sum_{d=1..8} (#k,m with k+m <= d) minus the dagger-at-k=0 duplicates
    EXPECT_EQ(r.records.size(), 285u);
}

INSTANTIATE_TEST_SUITE_P(Q, SeriesAtQ, ::testing::Values(0.3, 0.5, 0.9));

TEST(MatModel, TruncationConvergence)
{
    EXPECT_TRUE(check_truncation(Big(0.5)).pass());
    EXPECT_TRUE(check_truncation(Big(0.9)).pass());
}

TEST(Polar, DiagonalGramPath)
{
    const TruncationConfig<double> cfg{16, 6, 0.5};
    const auto rep = build_truncated_rep(cfg);
    const auto pd = polar_decompose(rep.b);
    EXPECT_TRUE(pd.diagonal_gram);
    // b kills the k = K column, so rank = N (2K)
    EXPECT_EQ(pd.rank, static_cast<Eigen::Index>(16 * 12));
    EXPECT_TRUE(pd.rank_deficient);
    const Operator<double> back = pd.unitary * pd.positive;
    EXPECT_NEAR(Eigen::MatrixXd(back - rep.b).norm(), 0.0, 1e-14);
}

TEST(Polar, DenseSvdPath)
{
    Eigen::MatrixXcd x(2, 2);
    x << 1.0, 2.0, std::complex<double>(0, 1), 3.0;
    const auto pd = polar_decompose(x);
    EXPECT_EQ(pd.rank, 2);
    EXPECT_NEAR((pd.unitary * pd.positive - x).norm(), 0.0, 1e-13);
    EXPECT_NEAR((pd.unitary.adjoint() * pd.unitary - Eigen::MatrixXcd::Identity(2, 2)).norm(), 0.0, 1e-13);
    EXPECT_NEAR((pd.positive - pd.positive.adjoint()).norm(), 0.0, 1e-13);
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(3, 3);
    z(0, 0) = 2.0;
    const auto pz = polar_decompose(z);
    EXPECT_EQ(pz.rank, 1);
    EXPECT_TRUE(pz.rank_deficient);
}

TEST(Polar, NonDiagonalSparseFallsBackToDense)
{
    const TruncationConfig<double> cfg{6, 2, 0.5};
    const auto rep = build_truncated_rep(cfg);
    const Operator<double> x = rep.a + rep.b;
    const auto pd = polar_decompose(x);
    EXPECT_FALSE(pd.diagonal_gram);
    EXPECT_NEAR(Eigen::MatrixXd(Operator<double>(pd.unitary * pd.positive) - x).norm(), 0.0, 1e-12);
}

TEST(Polar, BIdentities)
{
    const auto r = check_b_polar_identities(TruncationConfig<double>{64, 32, 0.5});
    for (const auto& rec : r.records)
        EXPECT_TRUE(rec.pass) << rec.name << " " << rec.residual;
}

TEST(Polar, DiagonalPathAgreesWithDenseSvd)
{
    const TruncationConfig<double> cfg{10, 4, 0.6};
    const auto rep = build_truncated_rep(cfg);
    const auto sparse = polar_decompose(rep.b);
    const Eigen::MatrixXcd dense_b = Eigen::MatrixXd(rep.b).cast<std::complex<double>>();
    const auto dense = polar_decompose(dense_b);
    EXPECT_EQ(sparse.rank, dense.rank);
    EXPECT_NEAR((Eigen::MatrixXd(sparse.positive).cast<std::complex<double>>() - dense.positive).norm(), 0.0, 1e-12);
    EXPECT_NEAR((Eigen::MatrixXd(sparse.unitary).cast<std::complex<double>>() - dense.unitary).norm(), 0.0, 1e-12);
}

TEST(Polar, RandomDenseMatrix)
{
    std::srand(5);
    const Eigen::MatrixXcd x = Eigen::MatrixXcd::Random(50, 50);
    const auto pd = polar_decompose(x);
    EXPECT_EQ(pd.rank, 50);
    EXPECT_NEAR((pd.unitary * pd.positive - x).norm(), 0.0, 1e-11);
    EXPECT_NEAR((pd.unitary.adjoint() * pd.unitary - Eigen::MatrixXcd::Identity(50, 50)).norm(), 0.0, 1e-11);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pd.positive);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
}
