#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "fracsub/profile.hpp"

namespace fracsub {

/// Uniform mesh of the unit interval or the unit square with M subdivisions
/// per axis. The square is split into right triangles along the (+1,+1)
/// diagonal of every cell. Unknowns are the interior nodes only; in 2D node
/// (i, j) has index (j-1)(M-1) + (i-1), x varying fastest.
struct MeshSpec {
    int dimension = 1;
    int subdivisions = 2;

    /// @throws ConfigError if dimension is not 1 or 2 or M < 2
    void validate() const;
    double h() const noexcept { return 1.0 / subdivisions; }
    std::size_t dof() const noexcept;
    std::size_t per_axis() const noexcept { return static_cast<std::size_t>(subdivisions - 1); }
    /// Coordinates of interior node p.
    double node_x(std::size_t p) const noexcept;
    double node_y(std::size_t p) const noexcept;
};

enum class MassTreatment { Galerkin, Lumped };

/// How a continuous function enters X_h: nodal interpolation, or the L2-type
/// projection defined by the operator's mass inner product, (Pg, chi) = (g, chi)
/// with exact load integrals.
enum class ProjectionRule { Interpolation, L2 };

class ShiftedSolver;

/// Discrete Laplacian -Delta_h = Mass^{-1} A on a uniform mesh, where A is the
/// P1 stiffness matrix and Mass is either the consistent or the lumped mass
/// matrix. Where a modal basis is available (all lumped operators, 1D
/// Galerkin, and small 2D Galerkin meshes) eigenpairs are exposed with
/// eigenvectors orthonormal in the Mass inner product.
class SpatialOperator {
public:
    /// @throws ConfigError for an invalid mesh
    static SpatialOperator build(const MeshSpec& mesh, MassTreatment mass);

    const MeshSpec& mesh() const noexcept { return mesh_; }
    MassTreatment mass() const noexcept { return mass_; }
    std::size_t dof() const noexcept { return mesh_.dof(); }

    bool has_modal_basis() const noexcept { return modal_; }
    /// Eigenvalues in modal order: k = 1..M-1 in 1D; (n, m) with n fastest in
    /// 2D sine bases; ascending for the dense 2D Galerkin basis.
    const std::vector<double>& eigenvalues() const;
    /// Nodal values of eigenvector q.
    std::vector<double> eigenvector(std::size_t q) const;

    /// c_q = phi_q^T Mass v.
    std::vector<double> to_modal(std::span<const double> nodal) const;
    /// sum_q c_q phi_q.
    std::vector<double> to_nodal(std::span<const double> modal) const;

    std::vector<double> apply_stiffness(std::span<const double> v) const;
    std::vector<double> apply_mass(std::span<const double> v) const;
    /// Delta_h v (negative semidefinite).
    std::vector<double> apply_laplacian(std::span<const double> v) const;
    /// (shift I - Delta_h) v.
    std::vector<double> apply_shifted(double shift, std::span<const double> v) const;

    /// Solve (shift I - Delta_h) v = rhs.
    /// @throws DomainError if shift <= 0, DimensionMismatch on size
    std::vector<double> shifted_solve(double shift, std::span<const double> rhs) const;
    ShiftedSolver shifted_solver(double shift) const;

    /// Mass inner product and norm of the operator's own mass treatment.
    double inner(std::span<const double> v, std::span<const double> w) const;
    double norm(std::span<const double> v) const;
    /// Norm in an explicitly chosen mass treatment.
    double norm(std::span<const double> v, MassTreatment which) const;

    /// Assembled sparse matrices (interior nodes).
    Eigen::SparseMatrix<double> stiffness_matrix() const;
    Eigen::SparseMatrix<double> mass_matrix(MassTreatment which) const;

    /// Exact load vector b_i = integral of g times hat function i.
    std::vector<double> load_vector(const SpatialProfile& g) const;
    /// Nodal vector of the projection of g into X_h.
    /// @throws NumericalFailure if interpolation meets a non-finite value
    std::vector<double> project(const SpatialProfile& g, ProjectionRule rule) const;
    /// Modal coefficients of project(g, rule).
    std::vector<double> project_source(const SpatialProfile& g, ProjectionRule rule) const;

    /// Value at (x, y) of the P1 function with interior nodal values v.
    double evaluate(std::span<const double> v, double x, double y = 0.0) const;

private:
    SpatialOperator() = default;
    void check_size(std::size_t n) const;
    std::vector<double> sine_forward(std::span<const double> v) const;
    std::vector<double> sine_backward(std::span<const double> c) const;
    std::vector<double> solve_mass(std::span<const double> rhs) const;

    MeshSpec mesh_;
    MassTreatment mass_ = MassTreatment::Lumped;
    bool modal_ = false;
    bool sine_basis_ = false;
    std::vector<double> eigenvalues_;
    std::vector<double> to_modal_scale_;  // sine basis: c = scale .* (S v)
    std::vector<double> to_nodal_scale_;  // sine basis: v = S (scale .* c)
    std::shared_ptr<const Eigen::MatrixXd> sine_;   // S_{ki} = sin(k pi i / M)
    std::shared_ptr<const Eigen::MatrixXd> dense_;  // dense Galerkin eigenvectors
    std::shared_ptr<const Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> mass_factor_;
};

/// (shift I - Delta_h)^{-1} for a fixed shift, reusable across time steps.
class ShiftedSolver {
public:
    ShiftedSolver(const SpatialOperator& op, double shift);
    std::vector<double> solve(std::span<const double> rhs) const;
    double shift() const noexcept { return shift_; }

private:
    const SpatialOperator* op_;
    double shift_;
    std::shared_ptr<const Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> factor_;
    Eigen::SparseMatrix<double> mass_;
};

/// Values of a fine-mesh solution at the nodes of a nested coarse mesh.
/// @throws ConfigError if the meshes are not nested
std::vector<double> restrict_to_coarse(const MeshSpec& fine, std::span<const double> v, const MeshSpec& coarse);

/// P1 interpolant of a coarse-mesh function evaluated at the fine nodes.
std::vector<double> interpolate_to_fine(const MeshSpec& coarse, std::span<const double> v, const MeshSpec& fine);

}  // namespace fracsub
