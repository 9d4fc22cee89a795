#include "fracsub/reference_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "fracsub/error.hpp"
#include "fracsub/mittag_leffler.hpp"

namespace fracsub {

double fode_exact(double nu, double t) {
    if (t < 0.0) throw DomainError("exact solution requested at negative time");
    if (t == 0.0 && nu < 0.0) throw DomainError("exact solution is infinite at t = 0 for nu < 0");
    return std::pow(t, nu);
}

std::vector<double> diagonal_exact(const LinearSystem& sys, double alpha, double t) {
    if (sys.op != nullptr) throw ConfigError("exact solution needs a diagonal system");
    sys.validate();
    FractionalOrder a(alpha);
    (void)a;
    if (t < 0.0) throw DomainError("exact solution requested at negative time");
    if (t == 0.0) return sys.initial.empty() ? std::vector<double>(sys.dim, 0.0) : sys.initial;

    const double ta = std::pow(t, alpha);
    std::vector<double> out(sys.dim, 0.0);
    const auto& terms = sys.source.terms;
    for (std::size_t k = 0; k < sys.dim; ++k) {
        const double x = -sys.diagonal[k] * ta;
        double v = 0.0;
        if (!sys.initial.empty() && sys.initial[k] != 0.0) v += ml_eval(alpha, 1.0, x) * sys.initial[k];
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const double g = sys.term_vectors[i][k];
            if (g == 0.0 || terms[i].weight == 0.0) continue;
            const double mu = terms[i].mu;
            v += terms[i].weight * std::pow(t, alpha + mu) * ml_eval(alpha, alpha + mu + 1.0, x) * g;
        }
        out[k] = v;
    }
    return out;
}

std::vector<double> semidiscrete_modal(const SpatialOperator& op, const SourceSpec& src, const InitialData& u0,
                                       double alpha, double t, ProjectionChoice rules) {
    if (!op.has_modal_basis()) throw DomainError("operator has no modal basis for the exact solution");
    return diagonal_exact(modal_system(op, src, u0, rules), alpha, t);
}

std::vector<double> semidiscrete_exact(const SpatialOperator& op, const SourceSpec& src, const InitialData& u0,
                                       double alpha, double t, ProjectionChoice rules) {
    return op.to_nodal(semidiscrete_modal(op, src, u0, alpha, t, rules));
}

OracleSolution make_fode_oracle(double nu) {
    return {OracleSolution::Kind::FodeExact, [nu](double t) { return std::vector<double>{fode_exact(nu, t)}; }};
}

OracleSolution make_semidiscrete_oracle(const SpatialOperator& op, SourceSpec src, InitialData u0, double alpha,
                                        ProjectionChoice rules) {
    if (!op.has_modal_basis()) throw DomainError("operator has no modal basis for the exact solution");
    auto sys = std::make_shared<const LinearSystem>(modal_system(op, src, u0, rules));
    const SpatialOperator* p = &op;
    return {OracleSolution::Kind::SemidiscreteModal,
            [sys, p, alpha](double t) { return p->to_nodal(diagonal_exact(*sys, alpha, t)); }};
}

RegularityWindow regularity_window(double alpha, const SpatialOperator& op) {
    FractionalOrder a(alpha);
    (void)a;
    const auto& lam = op.eigenvalues();
    const double lambda_min = *std::min_element(lam.begin(), lam.end());
    const double t_hi = std::min(1e-2, std::pow(1e-2 / lambda_min, 1.0 / alpha));
    return {1e-4 * t_hi, t_hi};
}

double regularity_slope(double alpha, const SpatialOperator& op, const SourceSpec& src, ProjectionChoice rules,
                        RegularityWindow window) {
    if (src.terms.size() != 1) throw ConfigError("regularity slope needs a single source term");
    if (!op.has_modal_basis()) throw DomainError("operator has no modal basis for the exact solution");
    if (window.t_lo == 0.0 && window.t_hi == 0.0) window = regularity_window(alpha, op);
    if (!(window.t_lo > 0.0) || !(window.t_hi > window.t_lo)) throw ConfigError("invalid regularity window");
    const LinearSystem sys = modal_system(op, src, InitialData{}, rules);

    constexpr int kPoints = 21;
    const double l0 = std::log(window.t_lo), l1 = std::log(window.t_hi);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < kPoints; ++i) {
        const double lt = l0 + (l1 - l0) * i / (kPoints - 1);
        const double nrm = op.norm(op.to_nodal(diagonal_exact(sys, alpha, std::exp(lt))));
        if (!(nrm > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        const double ly = std::log(nrm);
        sx += lt;
        sy += ly;
        sxx += lt * lt;
        sxy += lt * ly;
    }
    return (kPoints * sxy - sx * sy) / (kPoints * sxx - sx * sx);
}

}  // namespace fracsub
