#include "fracsub/self_check.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "fracsub/convergence.hpp"
#include "fracsub/cq_weights.hpp"
#include "fracsub/gamma.hpp"
#include "fracsub/mittag_leffler.hpp"
#include "fracsub/reference_oracle.hpp"
#include "fracsub/spatial_disc.hpp"
#include "fracsub/time_steppers.hpp"

namespace fracsub {

namespace {

CheckResult make(std::string name, double deviation, double bound) {
    return {std::move(name), deviation, bound, std::isfinite(deviation) && deviation <= bound};
}

// Coefficients of the symbol by a trapezoidal Cauchy integral on |xi| = r.
CheckResult weights_vs_symbol(CqScheme scheme, double alpha) {
    constexpr std::size_t n = 32;
    constexpr std::size_t samples = 4096;
    constexpr double r = 0.98;
    const CqKernel k = make_kernel(scheme, FractionalOrder(alpha), n);
    std::vector<std::complex<double>> values(samples);
    for (std::size_t s = 0; s < samples; ++s)
        values[s] = k.symbol(std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(s) / samples));
    double worst = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        std::complex<double> acc = 0.0;
        for (std::size_t s = 0; s < samples; ++s)
            acc += values[s] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * s % samples) / samples);
        const double wj = acc.real() / samples / std::pow(r, static_cast<double>(j));
        worst = std::max(worst, std::abs(wj - k[j]));
    }
    std::ostringstream name;
    name << (scheme == CqScheme::GL ? "GL" : "FBDF2") << " weights vs symbol, alpha=" << alpha;
    return make(name.str(), worst, 1e-12);
}

CheckResult eigen_residual(int dim, int M, MassTreatment mass) {
    const SpatialOperator op = SpatialOperator::build({dim, M}, mass);
    const auto& lam = op.eigenvalues();
    double worst = 0.0;
    for (std::size_t q = 0; q < lam.size(); ++q) {
        const std::vector<double> phi = op.eigenvector(q);
        const std::vector<double> lap = op.apply_laplacian(phi);
        double res = 0.0, nrm = 0.0;
        for (std::size_t i = 0; i < phi.size(); ++i) {
            res = std::max(res, std::abs(lap[i] + lam[q] * phi[i]));
            nrm = std::max(nrm, std::abs(phi[i]));
        }
        worst = std::max(worst, res / (lam[q] * nrm));
    }
    std::ostringstream name;
    name << "eigen-residual " << dim << "D M=" << M << (mass == MassTreatment::Lumped ? " lumped" : " Galerkin");
    return make(name.str(), worst, 1e-12);
}

CheckResult modal_vs_nodal(Scheme scheme, int dim) {
    const SpatialOperator op = SpatialOperator::build({dim, dim == 1 ? 16 : 8}, MassTreatment::Lumped);
    SourceSpec src;
    src.terms = {SourceTerm::power(1.0, -0.5, dim == 1 ? SpatialProfile::power(-0.25) : SpatialProfile::constant(1.0))};
    const InitialData u0{dim == 1 ? SpatialProfile::indicator(0.25, 0.75) : SpatialProfile::indicator2d(0.25, 0.75, 0.25, 0.75)};
    const TimeStepperConfig cfg{scheme, 0.6, {1.0, 32}};
    const ProjectionChoice rules{ProjectionRule::L2, ProjectionRule::L2};
    const auto a = run_pde(cfg, op, src, u0, rules, StepSpace::Modal);
    const auto b = run_pde(cfg, op, src, u0, rules, StepSpace::Nodal);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
        scale = std::max(scale, std::abs(b[i]));
    }
    return make("modal vs nodal " + to_string(scheme) + " " + std::to_string(dim) + "D", worst / scale, 1e-11);
}

CheckResult ml_special_cases() {
    double worst = 0.0;
    for (double x : {-30.0, -5.0, -1.0, -0.3, 0.0, 0.4, 1.0}) {
        worst = std::max(worst, std::abs(ml_eval(1.0, 1.0, x) - std::exp(x)));
        const double e12 = x == 0.0 ? 1.0 : std::expm1(x) / x;
        worst = std::max(worst, std::abs(ml_eval(1.0, 2.0, x) - e12));
    }
    for (double beta : {0.3, 1.0, 1.7, 2.5})
        for (double alpha : {0.2, 0.5, 0.9}) worst = std::max(worst, std::abs(ml_eval(alpha, beta, 0.0) - rgamma(beta)));
    // E_{1/2,1}(-z) = exp(z^2) erfc(z); both factors stay finite up to z = 15.
    for (double z : {0.1, 0.7, 2.0, 5.0, 9.0, 15.0})
        worst = std::max(worst, std::abs(ml_eval(0.5, 1.0, -z) - std::exp(z * z) * std::erfc(z)));
    return make("Mittag-Leffler closed forms", worst, 1e-12);
}

std::vector<CheckResult> symbol_slopes() {
    std::vector<CheckResult> out;
    for (double alpha : {0.3, 0.7}) {
        const SectorLemmaReport r = check_sector_lemmas(FractionalOrder(alpha), 400, alpha);
        const double gl = std::max(std::abs(r.gl_slope_min - (alpha + 1.0)), std::abs(r.gl_slope_max - (alpha + 1.0)));
        const double bd = std::max(std::abs(r.bdf2_slope_min - (alpha + 2.0)), std::abs(r.bdf2_slope_max - (alpha + 2.0)));
        std::ostringstream a;
        a << "GL symbol slope beta+1, beta=" << alpha;
        out.push_back(make(a.str(), gl, 0.05));
        std::ostringstream b;
        b << "BDF2 symbol slope beta+2, beta=" << alpha;
        out.push_back(make(b.str(), bd, 0.05));
        std::ostringstream c;
        c << "symbol sector inclusion, alpha=" << alpha;
        out.push_back(make(c.str(), std::max({r.gl_arg_excess_right, r.bdf2_arg_excess_right, r.gl_arg_excess_left, 0.0}),
                           1e-12));
    }
    return out;
}

std::vector<CheckResult> regularity() {
    std::vector<CheckResult> out;
    const SpatialOperator op = SpatialOperator::build({1, 64}, MassTreatment::Lumped);
    for (auto [alpha, mu] : {std::pair{0.3, -0.9}, std::pair{0.2, -0.5}, std::pair{0.5, -0.8}}) {
        SourceSpec src;
        src.terms = {SourceTerm::power(1.0, mu, SpatialProfile::constant(1.0))};
        std::ostringstream name;
        name << "regularity slope alpha=" << alpha << " mu=" << mu;
        out.push_back(make(name.str(), std::abs(regularity_slope(alpha, op, src) - (alpha + mu)), 0.05));
    }
    return out;
}

CheckResult zero_data() {
    double worst = 0.0;
    const SpatialOperator op = SpatialOperator::build({1, 8}, MassTreatment::Lumped);
    for (Scheme s : {Scheme::GLBE, Scheme::FBDF22, Scheme::CorrectedBE, Scheme::UncorrectedSBD}) {
        const TimeStepperConfig cfg{s, 0.5, {1.0, 16}};
        const RunResult r = run(cfg, scalar_system(-1.0, SourceSpec{}), true);
        for (const auto& u : r.trajectory) worst = std::max(worst, std::abs(u[0]));
        for (StepSpace space : {StepSpace::Modal, StepSpace::Nodal})
            for (double v : run_pde(cfg, op, SourceSpec{}, InitialData{}, {}, space)) worst = std::max(worst, std::abs(v));
    }
    return make("zero data gives zero trajectories", worst, 0.0);
}

// One step of every scheme against its closed form for the scalar problem.
CheckResult single_steps() {
    const double alpha = 0.4, lambda = -2.0, T = 0.5, u0 = 0.7, c = 1.3, mu = -0.3;
    SourceSpec src;
    src.terms = {SourceTerm::power(c, mu)};
    const double ta = std::pow(T, -alpha);
    const double w0 = std::pow(1.5, alpha);
    const double F = c * std::pow(T, mu + 1) / (mu + 1);
    const double Ft = c * std::pow(T, mu + 2) / ((mu + 1) * (mu + 2));
    const double f = c * std::pow(T, mu);

    const double U_gl = (F + std::pow(T, 1 - alpha) * rgamma(2 - alpha) * u0) / (ta - lambda);
    const double U_bd = (1.5 * Ft / T + 1.5 * std::pow(T, 1 - alpha) * rgamma(3 - alpha) * u0) / (ta * w0 - lambda);
    const double expected[] = {U_gl / T, 1.5 * U_bd / T, (f + ta * u0) / (ta - lambda), (f + ta * w0 * u0) / (ta * w0 - lambda)};
    const Scheme schemes[] = {Scheme::GLBE, Scheme::FBDF22, Scheme::CorrectedBE, Scheme::UncorrectedSBD};

    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        const RunResult r = run({schemes[i], alpha, {T, 1}}, scalar_system(lambda, src, u0));
        worst = std::max(worst, std::abs(r.final_u[0] - expected[i]) / std::abs(expected[i]));
    }
    return make("N=1 runs equal hand-computed steps", worst, 1e-13);
}

CheckResult rate_invariance() {
    const std::vector<double> params{20, 40, 80, 160};
    const std::vector<double> errors{3.1e-3, 1.4e-3, 7.2e-4, 3.5e-4};
    const ConvergenceReport a = make_report(ConvergenceAxis::Time, params, errors);
    std::vector<double> scaled = errors;
    for (double& e : scaled) e *= 37.5;
    const ConvergenceReport b = make_report(ConvergenceAxis::Time, params, scaled);
    double worst = 0.0;
    for (std::size_t i = 1; i < a.rows.size(); ++i) worst = std::max(worst, std::abs(*a.rows[i].rate - *b.rows[i].rate));
    return make("rates invariant under error scaling", worst, 1e-13);
}

CheckResult csv_round_trip() {
    const std::vector<TableRecord> recs{{"GLBE", 0.5, -0.5, 320, 9.9517e-04, std::nullopt, std::nullopt},
                                        {"FBDF22", 0.7, std::nullopt, 640, 1.234567e-09, 2.03, 2.0}};
    std::stringstream ss;
    write_csv(ss, recs);
    std::stringstream again;
    write_csv(again, read_csv(ss));
    std::stringstream first;
    write_csv(first, recs);
    return make("CSV round trip", first.str() == again.str() ? 0.0 : 1.0, 0.0);
}

}  // namespace

std::vector<CheckResult> run_self_checks() {
    std::vector<CheckResult> out;
    for (CqScheme s : {CqScheme::GL, CqScheme::FBDF2})
        for (double a : {0.1, 0.5, 0.9}) out.push_back(weights_vs_symbol(s, a));
    out.push_back(eigen_residual(1, 32, MassTreatment::Lumped));
    out.push_back(eigen_residual(1, 32, MassTreatment::Galerkin));
    out.push_back(eigen_residual(2, 16, MassTreatment::Lumped));
    out.push_back(eigen_residual(2, 8, MassTreatment::Galerkin));
    for (Scheme s : {Scheme::GLBE, Scheme::FBDF22, Scheme::CorrectedBE, Scheme::UncorrectedSBD})
        for (int d : {1, 2}) out.push_back(modal_vs_nodal(s, d));
    out.push_back(ml_special_cases());
    for (auto& r : symbol_slopes()) out.push_back(std::move(r));
    for (auto& r : regularity()) out.push_back(std::move(r));
    out.push_back(zero_data());
    out.push_back(single_steps());
    out.push_back(rate_invariance());
    out.push_back(csv_round_trip());
    return out;
}

}  // namespace fracsub
