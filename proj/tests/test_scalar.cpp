#include <gtest/gtest.h>

#include "awf/scalar.hpp"

using namespace awf;

namespace {

QFunction q_(long e) { return QFunction::q_power(e); }

}  // namespace

TEST(DeformationParameter, RejectsOutOfRange)
{
    EXPECT_THROW(DeformationParameter(0.0), domain_error);
    EXPECT_THROW(DeformationParameter(1.0), domain_error);
    EXPECT_THROW(DeformationParameter(-0.3), domain_error);
    const DeformationParameter q(0.5);
    EXPECT_GT(q.one_minus_q2(), 0.0);
    EXPECT_GT(q.one_minus_q2m(7), 0.0);
}

TEST(QFunction, CancelsCommonFactors)
{
    // (1 - q^2) / (1 - q^4) = 1 / (1 + q^2)
    const QFunction lhs = (QFunction(1) - q_(2)) / (QFunction(1) - q_(4));
    const QFunction rhs = QFunction(1) / (QFunction(1) + q_(2));
    EXPECT_EQ(lhs, rhs);
    EXPECT_EQ(lhs.denominator().degree(), 2);
    EXPECT_EQ(lhs.numerator().degree(), 0);
}

TEST(QFunction, LaurentPowers)
{
    EXPECT_EQ(q_(-3) * q_(3), QFunction(1));
    EXPECT_EQ(q_(-1) * q_(2), q_(1));
    EXPECT_TRUE((q_(2) - q_(2)).is_zero());
}

TEST(QFunction, EvaluatesNumerically)
{
    const QFunction f = (QFunction(1) - q_(2)) / (QFunction(1) - q_(4));
    EXPECT_NEAR(f.eval(0.5).real(), 0.8, 1e-15);
    EXPECT_NEAR((q_(-2) + QFunction(3)).eval(0.5).real(), 7.0, 1e-15);
}

TEST(QFunction, GaussianCoefficientsAndConjugation)
{
    const QFunction i(GaussianRational(Rational(0), Rational(1)));
    EXPECT_EQ(i * i, QFunction(-1));
    EXPECT_EQ((i * q_(1)).conj(), -(i * q_(1)));
    EXPECT_EQ((QFunction(1) / i), -i);
}

TEST(QFunction, DivisionByZeroThrows)
{
    EXPECT_THROW(QFunction(1) / QFunction(0), std::domain_error);
}

TEST(QPolynomial, GcdIsMonic)
{
    // (1 - q^2) = (1 - q)(1 + q); (1 - q^4) = (1 - q)(1 + q)(1 + q^2)
    const QPolynomial a({GaussianRational(1), GaussianRational(0), GaussianRational(-1)});
    const QPolynomial b({GaussianRational(1), 0, 0, 0, GaussianRational(-1)});
    const QPolynomial g = QPolynomial::gcd(a, b);
    EXPECT_EQ(g.degree(), 2);
    EXPECT_EQ(g.leading(), GaussianRational(1));
}

TEST(Fields, AgreeAtFixedQ)
{
    const FloatField ff(0.3);
    const ExactField ef(0.3);
    for (long e = -4; e <= 6; ++e)
        EXPECT_NEAR(std::abs(ff.q_pow(e) - ef.to_complex(ef.q_pow(e))), 0.0, 1e-12);
}
