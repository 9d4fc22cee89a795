#pragma once

#include <functional>
#include <vector>

#include "fracsub/source_model.hpp"
#include "fracsub/spatial_disc.hpp"
#include "fracsub/time_steppers.hpp"

namespace fracsub {

/// t^nu, the exact solution of the scalar test problem.
/// @throws DomainError for t < 0, or t = 0 with nu < 0 (infinite value)
double fode_exact(double nu, double t);

/// Exact solution at time t of a diagonal system D^alpha u + diag(k) u =
/// sum_i f_i(t) g_i, u(0) = u0, component by component:
///   E_{alpha,1}(-k t^alpha) u0 + sum_i w_i t^{alpha+mu_i} E_{alpha,alpha+mu_i+1}(-k t^alpha) g_i.
/// At t = 0 the initial vector is returned.
/// @throws ConfigError if the system is not diagonal, DomainError if t < 0
std::vector<double> diagonal_exact(const LinearSystem& sys, double alpha, double t);

/// Modal coefficients of the exact semidiscrete solution u_h(t).
/// @throws DomainError if op has no modal basis
std::vector<double> semidiscrete_modal(const SpatialOperator& op, const SourceSpec& src, const InitialData& u0,
                                       double alpha, double t, ProjectionChoice rules = {});
/// Nodal values of the exact semidiscrete solution u_h(t).
std::vector<double> semidiscrete_exact(const SpatialOperator& op, const SourceSpec& src, const InitialData& u0,
                                       double alpha, double t, ProjectionChoice rules = {});

/// A reference solution evaluated on demand.
struct OracleSolution {
    enum class Kind { FodeExact, SemidiscreteModal };
    Kind kind;
    std::function<std::vector<double>(double)> evaluate;
};

OracleSolution make_fode_oracle(double nu);
/// The operator must outlive the oracle.
OracleSolution make_semidiscrete_oracle(const SpatialOperator& op, SourceSpec src, InitialData u0, double alpha,
                                        ProjectionChoice rules = {});

/// Time window of a regularity fit.
struct RegularityWindow {
    double t_lo = 0.0;  ///< zero selects the default window
    double t_hi = 0.0;
};

/// Default window: [1e-4 t_hi, t_hi] with t_hi = min(1e-2, (1e-2 / lambda_min)^{1/alpha}),
/// so that lambda t^alpha <= 1e-2 for every mode and the solution is in its
/// small-time regime t^{alpha+mu}.
RegularityWindow regularity_window(double alpha, const SpatialOperator& op);

/// Least-squares slope of log ||u_h(t)|| against log t over 21 logarithmic
/// points of the window, for zero initial data and a single source term.
/// @throws ConfigError unless src has exactly one term or the window is invalid
double regularity_slope(double alpha, const SpatialOperator& op, const SourceSpec& src,
                        ProjectionChoice rules = {}, RegularityWindow window = {});

}  // namespace fracsub
