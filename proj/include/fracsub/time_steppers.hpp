#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fracsub/cq_weights.hpp"
#include "fracsub/source_model.hpp"
#include "fracsub/spatial_disc.hpp"

namespace fracsub {

/// GLBE and FBDF22 step the time-integrated unknown U and difference it;
/// the baselines step u directly with GL (CorrectedBE) or FBDF2
/// (UncorrectedSBD) weights and pointwise source values.
enum class Scheme { GLBE, FBDF22, CorrectedBE, UncorrectedSBD };

std::string to_string(Scheme s);
/// Accepts glbe, fbdf22, cbe, usbd (case-insensitive).
/// @throws ConfigError for anything else
Scheme parse_scheme(std::string_view text);
CqScheme weights_of(Scheme s) noexcept;
/// Nominal convergence order (1 or 2).
int nominal_order(Scheme s) noexcept;

/// Uniform grid t_n = n T / N.
struct TimeGrid {
    double T = 1.0;
    int N = 1;

    /// @throws DomainError if T <= 0 or N < 1
    void validate() const;
    double tau() const noexcept { return T / N; }
    double t(int n) const noexcept { return static_cast<double>(n) * T / N; }
};

struct TimeStepperConfig {
    Scheme scheme = Scheme::GLBE;
    double alpha = 0.5;
    TimeGrid grid;

    /// @throws DomainError on invalid alpha or grid
    void validate() const;
};

/// D^alpha u + K u = sum_i f_i(t) g_i, u(0) = u0, in a space of dimension dim.
/// K is diag(diagonal) when op is null; otherwise K = -Delta_h of *op acting
/// on nodal vectors.
struct LinearSystem {
    std::size_t dim = 0;
    std::vector<double> diagonal;
    const SpatialOperator* op = nullptr;
    SourceSpec source;
    std::vector<std::vector<double>> term_vectors;  ///< g_i, one per source term
    std::vector<double> initial;                    ///< u0; empty means zero

    /// @throws DimensionMismatch on inconsistent sizes
    void validate() const;
};

/// Scalar test equation D^alpha u = lambda u + f with u(0) = u0.
LinearSystem scalar_system(double lambda, const SourceSpec& src, double u0 = 0.0);

/// Projection choices for PDE data.
struct ProjectionChoice {
    ProjectionRule source = ProjectionRule::L2;
    ProjectionRule initial = ProjectionRule::Interpolation;
};

/// Semidiscrete PDE in the eigenbasis of op (diagonal K = eigenvalues).
LinearSystem modal_system(const SpatialOperator& op, const SourceSpec& src, const InitialData& u0,
                          ProjectionChoice rules = {});
/// Semidiscrete PDE in nodal space (K = -Delta_h, solved per step).
LinearSystem nodal_system(const SpatialOperator& op, const SourceSpec& src, const InitialData& u0,
                          ProjectionChoice rules = {});

/// Per-step scalar inputs shared by all components: the factor multiplying
/// each g_i and the factor multiplying u0 on the right-hand side of step n.
struct StepFactors {
    std::size_t terms = 0;
    std::vector<double> source;   ///< [(N+1) x terms], row n
    std::vector<double> initial;  ///< [N+1]
};
StepFactors step_factors(const TimeStepperConfig& cfg, const SourceSpec& src);

/// Step-by-step integrator with full history (O(N dim) memory).
class Stepper {
public:
    /// @throws DomainError / DimensionMismatch on invalid input
    Stepper(const TimeStepperConfig& cfg, LinearSystem system);

    /// Advance n -> n+1 with the configured scheme.
    /// @throws DomainError past the last step
    void step();
    int index() const noexcept { return n_; }
    const TimeStepperConfig& config() const noexcept { return cfg_; }

    /// Approximation u^n, n in [0, index()]; u^0 is the initial vector.
    std::vector<double> u(int n) const;
    /// Stored unknown of step n: U^n for GLBE/FBDF22, u^n for the baselines.
    std::span<const double> stored(int n) const;
    /// Right-hand side that step n solves against, given the stored history
    /// up to n-1 (exposed for verification).
    std::vector<double> rhs(int n) const;

private:
    friend void step_glbe(Stepper&);
    friend void step_fbdf22(Stepper&);
    friend void step_baseline(Stepper&);
    void solve_step();

    TimeStepperConfig cfg_;
    LinearSystem sys_;
    CqKernel kernel_;
    StepFactors factors_;
    std::vector<double> history_;  // [(N+1) x dim]
    std::vector<double> initial_;
    double shift_ = 0.0;
    int n_ = 0;
    std::unique_ptr<ShiftedSolver> solver_;
};

/// One step of the respective scheme.
/// @throws ConfigError if the stepper is configured for another scheme
void step_glbe(Stepper& s);
void step_fbdf22(Stepper& s);
void step_baseline(Stepper& s);

struct RunResult {
    std::vector<double> final_u;                  ///< u^N
    std::vector<std::vector<double>> trajectory;  ///< u^0..u^N when requested
};

/// Integrate n = 1..N. Diagonal systems are advanced in blocks of independent
/// components; nodal systems use a Stepper with per-step shifted solves.
RunResult run(const TimeStepperConfig& cfg, const LinearSystem& system, bool keep_trajectory = false);

enum class StepSpace { Auto, Modal, Nodal };

/// PDE convenience: returns the nodal u^N. Auto picks the modal path when the
/// operator has a modal basis.
std::vector<double> run_pde(const TimeStepperConfig& cfg, const SpatialOperator& op, const SourceSpec& src,
                            const InitialData& u0, ProjectionChoice rules = {},
                            StepSpace space = StepSpace::Auto);

}  // namespace fracsub
