#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "fracsub/error.hpp"
#include "fracsub/mittag_leffler.hpp"
#include "fracsub/reference_oracle.hpp"
#include "fracsub/spatial_disc.hpp"
#include "fracsub/time_steppers.hpp"
#include "oracles.hpp"

namespace fracsub {
namespace {

SourceSpec single_source(double mu, SpatialProfile g) {
    SourceSpec s;
    s.terms = {SourceTerm::power(1.0, mu, std::move(g))};
    return s;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

TEST(FodeExact, Values) {
    EXPECT_EQ(fode_exact(-0.5, 1.0), 1.0);
    EXPECT_NEAR(fode_exact(-0.5, 0.25), 2.0, 1e-15);
    EXPECT_NEAR(fode_exact(-0.9, 4.0), 0.2871746, 1e-7);
    EXPECT_EQ(fode_exact(0.3, 0.0), 0.0);
    EXPECT_THROW(fode_exact(-0.5, 0.0), DomainError);
    EXPECT_THROW(fode_exact(0.5, -1.0), DomainError);
    const auto o = make_fode_oracle(-0.3);
    EXPECT_EQ(o.kind, OracleSolution::Kind::FodeExact);
    EXPECT_NEAR(o.evaluate(2.0)[0], std::pow(2.0, -0.3), 1e-15);
}

// The Mittag-Leffler representation of the scalar test problem reproduces t^nu.
TEST(DiagonalExact, ReproducesScalarClosedForm) {
    for (double alpha : {0.2, 0.5, 0.8}) {
        for (double nu : {alpha - 1.0, alpha - 1.0 + 0.3 * (1 - alpha), -0.05, 0.0, 0.7}) {
            const auto sys = scalar_system(-1.0, fode_power_source(alpha, nu, -1.0));
            for (double t : {0.01, 0.5, 1.0, 3.0}) {
                EXPECT_NEAR(diagonal_exact(sys, alpha, t)[0], std::pow(t, nu), 1e-11 * std::pow(t, nu))
                    << "alpha=" << alpha << " nu=" << nu << " t=" << t;
            }
        }
    }
    const auto op = SpatialOperator::build({1, 8}, MassTreatment::Lumped);
    const auto nodal = nodal_system(op, SourceSpec{}, InitialData{});
    EXPECT_THROW(diagonal_exact(nodal, 0.5, 1.0), ConfigError);
    EXPECT_THROW(diagonal_exact(scalar_system(-1.0, SourceSpec{}, 1.0), 0.5, -1.0), DomainError);
}

TEST(Semidiscrete, SingleModePropagator) {
    const int M = 16;
    const auto op = SpatialOperator::build({1, M}, MassTreatment::Lumped);
    struct Case {
        int k;
        double alpha, t;
    };
    for (const Case c : {Case{1, 0.3, 0.05}, Case{1, 0.75, 1.0}, Case{2, 0.75, 0.5}, Case{3, 0.9, 1.0}, Case{3, 0.5, 0.01}}) {
        const int k = c.k;
        const InitialData u0{SpatialProfile::custom("mode", [k](double x, double) { return std::sin(k * M_PI * x); })};
        const double x = op.eigenvalues()[k - 1] * std::pow(c.t, c.alpha);
        ASSERT_LE(std::pow(x, 1.0 / c.alpha), 300.0);  // MPFR series range
        const double decay = oracle::mp_ml(c.alpha, 1.0, -x);
        const auto u = semidiscrete_exact(op, SourceSpec{}, u0, c.alpha, c.t);
        for (std::size_t i = 0; i < u.size(); ++i) {
            EXPECT_NEAR(u[i], decay * std::sin(k * M_PI * op.mesh().node_x(i)), 1e-12) << "k=" << k;
        }
    }
}

TEST(Semidiscrete, HeatLimit) {
    const auto op = SpatialOperator::build({1, 8}, MassTreatment::Galerkin);
    const InitialData u0{SpatialProfile::custom("mode", [](double x, double) { return std::sin(2 * M_PI * x); })};
    const double lam = op.eigenvalues()[1], t = 0.02;
    const double alpha = 1.0 - 1e-9;
    const auto u = semidiscrete_exact(op, SourceSpec{}, u0, alpha, t);
    // dE/dalpha is O(lambda t |log t|) at alpha = 1
    const double tol = 1e-9 * 10.0 * lam * t * std::exp(-lam * t) * std::abs(std::log(t)) + 1e-13;
    for (std::size_t i = 0; i < u.size(); ++i) {
        EXPECT_NEAR(u[i], std::exp(-lam * t) * std::sin(2 * M_PI * op.mesh().node_x(i)), tol);
    }
}

TEST(Semidiscrete, InitialTimeReturnsProjectedData) {
    const auto op = SpatialOperator::build({2, 8}, MassTreatment::Lumped);
    const InitialData u0{SpatialProfile::indicator2d(0, 0.5, 0, 0.5)};
    const auto u = semidiscrete_exact(op, single_source(-0.5, SpatialProfile::constant(1.0)), u0, 0.5, 0.0);
    const auto p = op.project(u0.profile, ProjectionRule::Interpolation);
    EXPECT_LE(max_abs_diff(u, p), 1e-14);
    const auto o = make_semidiscrete_oracle(op, SourceSpec{}, u0, 0.5);
    EXPECT_EQ(o.kind, OracleSolution::Kind::SemidiscreteModal);
    EXPECT_LE(max_abs_diff(o.evaluate(0.3), semidiscrete_exact(op, SourceSpec{}, u0, 0.5, 0.3)), 0.0);
}

// Constant-in-time source: each mode relaxes as (1 - E_{alpha,1}(-lambda t^alpha)) / lambda,
// which the oracle reaches through t^alpha E_{alpha,alpha+1} instead.
TEST(Semidiscrete, ConstantSourceRelaxation) {
    const auto op = SpatialOperator::build({1, 16}, MassTreatment::Galerkin);
    const auto g = SpatialProfile::power(-0.25);
    const auto src = single_source(0.0, g);
    const auto gk = op.to_modal(op.project(g, ProjectionRule::L2));
    for (double alpha : {0.2, 0.6, 0.95}) {
        for (double t : {0.1, 1.0}) {
            const auto modal = semidiscrete_modal(op, src, InitialData{}, alpha, t);
            for (std::size_t k = 0; k < modal.size(); ++k) {
                const double lam = op.eigenvalues()[k];
                const double ref = gk[k] * (1.0 - ml_eval(alpha, 1.0, -lam * std::pow(t, alpha))) / lam;
                EXPECT_NEAR(modal[k], ref, 1e-10 * std::max(1.0, std::abs(gk[k]) / lam)) << "k=" << k;
            }
        }
    }
}

TEST(Semidiscrete, ModesMatchConvolutionQuadrature) {
    const auto op = SpatialOperator::build({1, 4}, MassTreatment::Lumped);
    const auto g = SpatialProfile::power(-0.25);
    const auto gk = op.to_modal(op.project(g, ProjectionRule::L2));
    const auto modal = semidiscrete_modal(op, single_source(-0.5, g), InitialData{}, 0.5, 1.0);
    ASSERT_EQ(modal.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        const double ref = gk[k] * oracle::ml_convolution_quadrature(0.5, op.eigenvalues()[k], 1.0, -0.5);
        EXPECT_NEAR(modal[k], ref, 1e-9) << "k=" << k;
    }
}

TEST(Semidiscrete, RequiresModalBasis) {
    const auto op = SpatialOperator::build({2, 40}, MassTreatment::Galerkin);
    EXPECT_THROW(semidiscrete_modal(op, SourceSpec{}, InitialData{}, 0.5, 1.0), DomainError);
}

struct SlopeCase {
    double alpha, mu;
};

class RegularitySlope : public ::testing::TestWithParam<SlopeCase> {};

TEST_P(RegularitySlope, MatchesSingularExponent) {
    const auto [alpha, mu] = GetParam();
    const auto op = SpatialOperator::build({1, 64}, MassTreatment::Lumped);
    const double slope = regularity_slope(alpha, op, single_source(mu, SpatialProfile::power(-0.25)));
    EXPECT_NEAR(slope, alpha + mu, 0.05);
}

INSTANTIATE_TEST_SUITE_P(UnboundedSolutions, RegularitySlope,
                         ::testing::Values(SlopeCase{0.3, -0.9}, SlopeCase{0.1, -0.5}, SlopeCase{0.5, -0.9}));

TEST(Regularity, BorderlineAndBoundedCases) {
    const auto op = SpatialOperator::build({1, 64}, MassTreatment::Lumped);
    const auto g = SpatialProfile::power(-0.25);
    EXPECT_NEAR(regularity_slope(0.5, op, single_source(-0.5, g)), 0.0, 0.1);
    EXPECT_GT(regularity_slope(0.9, op, single_source(-0.1, g)), 0.0);
    const auto w = regularity_window(0.5, op);
    EXPECT_LE(op.eigenvalues().front() * std::pow(w.t_hi, 0.5), 1e-2 * (1 + 1e-12));
    EXPECT_NEAR(w.t_lo, 1e-4 * w.t_hi, 1e-18);
    SourceSpec two = single_source(-0.5, g);
    two.terms.push_back(SourceTerm::power(1.0, 0.0, g));
    EXPECT_THROW(regularity_slope(0.5, op, two), ConfigError);
    EXPECT_THROW(regularity_slope(0.5, op, single_source(-0.5, g), {}, {1e-2, 1e-3}), ConfigError);
}

// The oracle is the limit of the FBDF22 solutions: errors fall at order 2.
TEST(Semidiscrete, Fbdf22ConvergesToOracle) {
    const auto op = SpatialOperator::build({1, 32}, MassTreatment::Lumped);
    const auto src = single_source(-0.5, SpatialProfile::power(-0.25));
    const InitialData u0{SpatialProfile::indicator(0.25, 0.75)};
    const auto exact = semidiscrete_exact(op, src, u0, 0.5, 1.0);
    std::vector<double> err;
    for (int N : {40, 80, 160, 320}) {
        TimeStepperConfig cfg;
        cfg.scheme = Scheme::FBDF22;
        cfg.alpha = 0.5;
        cfg.grid = {1.0, N};
        const auto u = run_pde(cfg, op, src, u0);
        std::vector<double> d(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) d[i] = u[i] - exact[i];
        err.push_back(op.norm(d));
    }
    for (std::size_t i = 1; i < err.size(); ++i) EXPECT_NEAR(std::log2(err[i - 1] / err[i]), 2.0, 0.1) << i;
}

}  // namespace
}  // namespace fracsub
