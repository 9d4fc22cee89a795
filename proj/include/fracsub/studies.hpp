#pragma once

#include <string>
#include <vector>

#include "fracsub/convergence.hpp"
#include "fracsub/source_model.hpp"
#include "fracsub/spatial_disc.hpp"
#include "fracsub/time_steppers.hpp"

namespace fracsub {

/// Scalar test problem D^alpha u = lambda u + f with exact solution t^nu.
struct FodeProblem {
    double alpha = 0.5;
    double nu = -0.5;
    double lambda = -1.0;
    double T = 1.0;
};

/// |u^N - T^nu| for one scheme and step count.
double fode_error(Scheme scheme, const FodeProblem& p, int N);
/// Errors over an increasing N-list. A failing run stops the study and
/// leaves the report flagged invalid with the rows computed so far.
ConvergenceReport fode_study(Scheme scheme, const FodeProblem& p, const std::vector<int>& steps);

/// Semidiscrete PDE problem on a uniform mesh.
struct PdeProblem {
    MeshSpec mesh;
    MassTreatment mass = MassTreatment::Lumped;
    SourceSpec source;
    InitialData initial;
    ProjectionChoice rules;
    double T = 1.0;
};

/// ||u^N - u_h(T)|| in the operator's mass norm, against the exact
/// semidiscrete solution.
double pde_error(Scheme scheme, double alpha, const PdeProblem& p, int N);
/// Temporal study against the exact semidiscrete solution, which is
/// evaluated once and shared by all step counts.
ConvergenceReport pde_temporal_study(Scheme scheme, double alpha, const PdeProblem& p,
                                     const std::vector<int>& steps);

/// How solutions on meshes h and h/2 are compared.
enum class MeshComparison {
    RestrictToCoarse,   ///< fine nodal values at coarse nodes, coarse mass norm
    InterpolateToFine,  ///< coarse P1 interpolant at fine nodes, consistent-mass norm on the fine mesh
};

/// Successive-refinement study of the exact semidiscrete solution at T.
/// Row i carries 1/h of the finer mesh and ||u_{2h} - u_h||. The mesh in
/// `p` supplies dimension only; `subdivisions` lists M for every level.
/// @throws ConfigError unless each M doubles its predecessor
ConvergenceReport spatial_study(double alpha, const PdeProblem& p, const std::vector<int>& subdivisions,
                                MeshComparison comparison = MeshComparison::RestrictToCoarse);

/// Data of the fully discrete examples, zero-initial/singular-source case 'a'
/// or indicator-initial/zero-source case 'b':
///   1D a: f = t^mu x^{-1/4};      1D b: u0 = 1 on [1/4, 3/4]
///   2D a: f = (1 + t^mu) 1_box;   2D b: u0 = 1_box, box = [1/4, 3/4]^2
/// Source and initial data both use the L2 projection.
/// @throws ConfigError for an unknown case or dimension
PdeProblem fully_discrete_example(int dimension, char example_case, double mu, int subdivisions);

/// Data of the spatial examples: f = (1 + t^mu) g with g = x^{-1/4} in 1D
/// and g = 1_box in 2D, zero initial data, lumped mass.
PdeProblem spatial_example(int dimension, double mu);

enum class StudyKind { Fode, PdeTime, Space };

/// A study as read from a configuration file.
struct RunConfig {
    StudyKind kind = StudyKind::Fode;
    Scheme scheme = Scheme::GLBE;
    double alpha = 0.5;
    std::vector<double> exponents{-0.5};  ///< nu (fode) or mu (pde, space)
    double lambda = -1.0;                 ///< fode only
    double T = 1.0;
    int dimension = 1;
    MassTreatment mass = MassTreatment::Lumped;
    std::vector<int> subdivisions{128};  ///< pde: first entry; space: the chain
    std::vector<int> steps{20, 40, 80, 160, 320};
    char example_case = 'a';
    MeshComparison comparison = MeshComparison::RestrictToCoarse;
    /// Explicit data replacing the example builders when present.
    bool custom_data = false;
    SourceSpec source;
    InitialData initial;
    ProjectionChoice rules;
    std::string output;

    /// @throws DomainError for nu < alpha - 1 or mu <= -1, ConfigError for
    /// empty or non-increasing lists
    void validate() const;
};

/// One report per exponent, in input order.
std::vector<ConvergenceReport> run_study(const RunConfig& cfg);
/// Report of one exponent of a fode or pde configuration.
ConvergenceReport temporal_study(const RunConfig& cfg, double exponent);

}  // namespace fracsub
