#pragma once

#include <span>
#include <vector>

#include "fracsub/profile.hpp"

namespace fracsub {

/// One separable source term weight * t^mu / Gamma(mu+1) * g(x).
///
/// Storing the weight of the normalized power keeps every time factor finite
/// and lets mu = -1 denote the limit t^mu/Gamma(mu+1) -> delta(t): a unit
/// mass at t = 0 whose antiderivative is the Heaviside step.
struct SourceTerm {
    double weight = 0.0;
    double mu = 0.0;
    SpatialProfile profile = SpatialProfile::constant(1.0);

    /// c * t^mu * g(x) for mu > -1.
    /// @throws DomainError if mu <= -1
    static SourceTerm power(double c, double mu, SpatialProfile g = SpatialProfile::constant(1.0));
    /// weight * delta(t) * g(x).
    static SourceTerm dirac(double weight, SpatialProfile g = SpatialProfile::constant(1.0));

    bool is_dirac() const noexcept { return mu == -1.0; }
    /// c in c * t^mu; zero for a Dirac term.
    double coefficient() const;
};

/// Finite sum of separable power-in-time terms.
struct SourceSpec {
    std::vector<SourceTerm> terms;

    /// @throws DomainError if some mu < -1 or a weight is not finite
    void validate() const;
    bool empty() const noexcept { return terms.empty(); }
};

/// Per-term time factors f_i(t). A Dirac term contributes 0 for t > 0.
/// @throws DomainError for t <= 0 when some mu < 0 (the value is infinite)
std::vector<double> eval_f(const SourceSpec& src, double t);
/// Per-term F_i(t), the integral of f_i over (0, t); zero for t <= 0.
std::vector<double> eval_F(const SourceSpec& src, double t);
/// Per-term integral of F_i over (0, t); zero for t <= 0.
std::vector<double> eval_Ftilde(const SourceSpec& src, double t);

/// BDF2 difference D_tau Ftilde_i(t_n) = (1.5 Ft(t_n) - 2 Ft(t_{n-1}) + 0.5 Ft(t_{n-2}))/tau
/// with Ft = 0 for t <= 0. Consecutive power differences are formed with
/// expm1/log1p so the result keeps full relative accuracy for large n.
std::vector<double> bdf2_diff_Ftilde(const SourceSpec& src, int n, double tau);
/// Same difference applied to the order-2 correction factor.
double bdf2_diff_correction(double alpha, int n, double tau);

/// Time factor of the initial-data term: t^{1-alpha}/Gamma(2-alpha) for
/// order 1 and t^{2-alpha}/Gamma(3-alpha) for order 2; zero for t <= 0.
double correction_factor(double alpha, double t, int order);
/// correction_factor times the initial-data vector.
std::vector<double> correction_terms(double alpha, std::span<const double> u0, double t, int order);

/// Source of the scalar test equation D^alpha u = lambda u + f with exact
/// solution t^nu:
///   f = Gamma(nu+1)/Gamma(nu+1-alpha) t^{nu-alpha} - lambda t^nu.
/// At nu = alpha - 1 the first term is Gamma(alpha) delta(t).
/// @throws DomainError if nu < alpha - 1
SourceSpec fode_power_source(double alpha, double nu, double lambda);

/// Initial data u0 = g(x) (zero profile for homogeneous data).
struct InitialData {
    SpatialProfile profile = SpatialProfile::zero();
    bool is_zero() const noexcept { return profile.is_zero(); }
};

}  // namespace fracsub
