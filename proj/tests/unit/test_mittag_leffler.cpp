#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fracsub/error.hpp"
#include "fracsub/mittag_leffler.hpp"
#include "oracles.hpp"

namespace fracsub {
namespace {

TEST(MittagLeffler, ClosedFormValues) {
    EXPECT_NEAR(ml_eval(0.5, 1.5, 0.0), 1.1283791671, 1e-10);
    EXPECT_EQ(ml_eval(0.5, 1.5, 0.0), 1.0 / std::tgamma(1.5));
    EXPECT_NEAR(ml_eval(1.0, 1.0, -1.0), 0.3678794412, 1e-10);
    EXPECT_NEAR(ml_eval(1.0, 2.0, -1.0), 0.6321205588, 1e-10);
    EXPECT_NEAR(ml_eval(0.5, 1.0, -1.0), 0.4275835762, 1e-10);
    EXPECT_NEAR(ml_eval(0.5, 1.0, -1.0), std::exp(1.0) * std::erfc(1.0), 1e-15);
}

TEST(MittagLeffler, ParameterRange) {
    EXPECT_THROW(ml_eval(0.0, 1.0, -1.0), DomainError);
    EXPECT_THROW(ml_eval(1.2, 1.0, -1.0), DomainError);
    EXPECT_THROW(ml_eval(0.5, 0.0, -1.0), DomainError);
    EXPECT_THROW(ml_eval(0.5, 4.5, -1.0), DomainError);
    EXPECT_THROW(ml_eval(0.5, 1.0, std::nan("")), DomainError);
    EXPECT_NO_THROW(ml_eval(1.0, 4.0, -3.0));
}

TEST(MittagLeffler, ExponentialOnWideRange) {
    for (double x : {-700.0, -50.0, -3.5, -0.01, 0.5, 1.0}) EXPECT_NEAR(ml_eval(1.0, 1.0, x), std::exp(x), 1e-12) << x;
}

// Every value is certified to 1e-12 absolute; compare with a multiprecision series.
TEST(MittagLeffler, AgreesWithMultiprecisionSeries) {
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0})
        for (double beta : {0.3, 0.5, 1.0, 1.5, 2.5, 4.0}) {
            // r = |x|^{1/alpha} up to 300 keeps the oracle affordable and
            // reaches well into the asymptotic regime (r >= 28)
            const double xmax = std::pow(300.0, alpha);
            for (double frac : {1e-3, 0.02, 0.1, 0.3, 0.6, 1.0}) {
                const double x = -frac * xmax;
                const double ref = oracle::mp_ml(alpha, beta, x);
                EXPECT_NEAR(ml_eval(alpha, beta, x), ref, 1e-12)
                    << "alpha=" << alpha << " beta=" << beta << " x=" << x;
            }
            EXPECT_NEAR(ml_eval(alpha, beta, 0.8), oracle::mp_ml(alpha, beta, 0.8), 1e-12);
        }
}

TEST(MittagLeffler, LargeNegativeArgumentsFollowLeadingAsymptotics) {
    // E_{alpha,beta}(x) ~ -1/(x Gamma(beta - alpha)) as x -> -infinity
    for (double alpha : {0.2, 0.5, 0.8})
        for (double x : {-1e4, -1e6}) {
            const double lead = -1.0 / (x * std::tgamma(1.0 - alpha));
            EXPECT_NEAR(ml_eval(alpha, 1.0, x), lead, 1e-12 + std::abs(lead) * 10.0 / std::abs(x));
        }
}

TEST(MittagLeffler, PositiveAndMonotoneOnNegativeAxis) {
    for (double alpha : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9})
        for (double beta : {alpha, 1.0, alpha + 0.4, 2.0}) {
            if (beta < alpha) continue;
            double previous = ml_eval(alpha, beta, 0.0);
            for (double x = -0.05; x > -2e5; x *= 1.3) {
                const double v = ml_eval(alpha, beta, x);
                EXPECT_GT(v, 0.0) << alpha << " " << beta << " " << x;
                EXPECT_LE(v, previous + 1e-12) << alpha << " " << beta << " " << x;
                previous = v;
            }
        }
}

TEST(MittagLeffler, RegimesOverlapInHandoffBand) {
    // Around r = |x|^{1/alpha} = 30..34 both the asymptotic expansion and the
    // extended series certify the tolerance on their own.
    for (double alpha : {0.05, 0.1, 0.3, 0.5, 0.7, 0.9})
        for (double beta : {alpha, 1.0, 1.7, 4.0})
            for (double r : {30.0, 32.0, 34.0}) {
                const MlQuery q{alpha, beta, -std::pow(r, alpha)};
                const MlResult a = ml_asymptotic(q), s = ml_series_extended(q);
                EXPECT_LE(a.error_estimate, kMlTolerance) << alpha << " " << beta << " " << r;
                EXPECT_LE(s.error_estimate, kMlTolerance) << alpha << " " << beta << " " << r;
                EXPECT_NEAR(a.value, s.value, 1e-11) << alpha << " " << beta << " " << r;
            }
}

TEST(MittagLeffler, ErrorEstimatesBoundTrueError) {
    for (double alpha : {0.1, 0.5, 0.9})
        for (double beta : {alpha, 1.0, 2.5})
            for (double r : {20.0, 28.0, 36.0, 44.0}) {
                const MlQuery q{alpha, beta, -std::pow(r, alpha)};
                const double ref = oracle::mp_ml(alpha, beta, q.x);
                const MlResult a = ml_asymptotic(q), s = ml_series_extended(q);
                EXPECT_LE(std::abs(a.value - ref), a.error_estimate) << alpha << " " << beta << " " << r;
                EXPECT_LE(std::abs(s.value - ref), s.error_estimate) << alpha << " " << beta << " " << r;
            }
}

TEST(MittagLeffler, NoUncertifiedGapOnDenseGrid) {
    for (int ia = 1; ia <= 20; ++ia) {
        const double alpha = 0.05 * ia;
        for (double beta : {alpha, alpha + 0.1, 1.0, alpha + 1.0, 2.0, 4.0}) {
            if (beta > 4.0) continue;
            for (double r = 20.0; r <= 60.0; r += 0.25) EXPECT_NO_THROW(ml_eval(alpha, beta, -std::pow(r, alpha)));
        }
    }
}

TEST(MittagLeffler, RegimeSelection) {
    EXPECT_EQ(ml_evaluate({0.5, 1.0, -0.5}).regime, MlRegime::Series);
    EXPECT_EQ(ml_evaluate({0.5, 1.0, -3.0}).regime, MlRegime::ExtendedSeries);
    EXPECT_EQ(ml_evaluate({0.5, 1.0, -100.0}).regime, MlRegime::Asymptotic);
}

TEST(MittagLeffler, RecurrenceIdentity) {
    for (double alpha : {0.15, 0.45, 0.75, 1.0})
        for (double beta : {0.4, 1.0, 1.8})
            for (double x : {-0.4, -3.0, -25.0, -400.0, 0.7}) {
                const double lhs = ml_eval(alpha, beta, x);
                const double rhs = x * ml_eval(alpha, alpha + beta, x) + 1.0 / std::tgamma(beta);
                EXPECT_NEAR(lhs, rhs, 1e-11 * std::max(1.0, std::abs(x))) << alpha << " " << beta << " " << x;
            }
}

TEST(MlConvWeight, ZeroEigenvalueAndSmoothSource) {
    EXPECT_NEAR(ml_conv_weight(0.5, 0.0, 1.0, 0.0), 1.1283791671, 1e-10);
}

TEST(MlConvWeight, HalfOrderReducesToErfc) {
    const double v = ml_conv_weight(0.5, 1.0, 1.0, -0.5);
    EXPECT_NEAR(v, 0.7578721561, 1e-10);
    EXPECT_NEAR(v, std::sqrt(std::numbers::pi) * std::exp(1.0) * std::erfc(1.0), 1e-14);
}

TEST(MlConvWeight, MatchesQuadratureAtEigenvalueOfCoarseMesh) {
    const double v = ml_conv_weight(0.9, 9.3726, 0.5, -0.9);
    const double q = oracle::ml_convolution_quadrature(0.9, 9.3726, 0.5, -0.9);
    EXPECT_LE(std::abs(v - q), 1e-9 * std::abs(q));
}

TEST(MlConvWeight, MatchesQuadratureOnGrid) {
    for (double alpha : {0.3, 0.6, 0.9})
        for (double mu : {-0.9, -0.5, 0.5})
            for (double lambda : {0.25, 1.0, 2.0}) {
                const double v = ml_conv_weight(alpha, lambda, 1.0, mu);
                const double q = oracle::ml_convolution_quadrature(alpha, lambda, 1.0, mu);
                EXPECT_LE(std::abs(v - q), 1e-9 * std::abs(q)) << alpha << " " << mu << " " << lambda;
            }
}

TEST(MlConvWeight, InvalidArguments) {
    EXPECT_THROW(ml_conv_weight(0.5, 1.0, 0.0, -0.5), DomainError);
    EXPECT_THROW(ml_conv_weight(0.5, 1.0, 1.0, -1.0), DomainError);
    EXPECT_THROW(ml_conv_weight(0.5, -1.0, 1.0, -0.5), DomainError);
}

TEST(MlConvWeight, NormalizedFormAndDiracLimit) {
    const double a = ml_conv_weight(0.6, 2.0, 0.7, -0.4);
    EXPECT_NEAR(ml_conv_weight_normalized(0.6, 2.0, 0.7, -0.4), a / std::tgamma(0.6), 1e-14);
    // mu = -1: the response to a unit mass at s = 0 is t^{alpha-1} E_{alpha,alpha}(-lambda t^alpha).
    const double t = 0.7;
    EXPECT_NEAR(ml_conv_weight_normalized(0.6, 2.0, t, -1.0),
                std::pow(t, -0.4) * ml_eval(0.6, 0.6, -2.0 * std::pow(t, 0.6)), 1e-14);
}

}  // namespace
}  // namespace fracsub
