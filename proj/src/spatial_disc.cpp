#include "fracsub/spatial_disc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fracsub/error.hpp"
#include "fracsub/gamma.hpp"

namespace fracsub {

namespace {

// Largest 2D Galerkin system diagonalized densely; beyond it the operator
// works in nodal space with sparse Cholesky factorizations.
constexpr std::size_t kDenseGalerkinMaxDof = 1089;

using Vec = std::vector<double>;
using Point = std::array<double, 2>;

// 10-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 10> kGaussX{
    -0.9739065285171717, -0.8650633666889845, -0.6794095682990244, -0.4333953941292472,
    -0.1488743389816312, 0.1488743389816312,  0.4333953941292472,  0.6794095682990244,
    0.8650633666889845,  0.9739065285171717};
constexpr std::array<double, 10> kGaussW{
    0.0666713443086881, 0.1494513491505806, 0.2190863625159820, 0.2692667193099963,
    0.2955242247147529, 0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
    0.1494513491505806, 0.0666713443086881};

// Degree-5 seven-point rule on the reference triangle (barycentric, weights sum to 1).
struct TriRule {
    std::array<std::array<double, 3>, 7> bary;
    std::array<double, 7> w;
};
constexpr double kA1 = 0.059715871789770, kB1 = 0.470142064105115;
constexpr double kA2 = 0.797426985353087, kB2 = 0.101286507323456;
constexpr double kW0 = 0.225, kW1 = 0.132394152788506, kW2 = 0.125939180544827;
constexpr TriRule kTriRule{{{{1.0 / 3, 1.0 / 3, 1.0 / 3},
                             {kA1, kB1, kB1},
                             {kB1, kA1, kB1},
                             {kB1, kB1, kA1},
                             {kA2, kB2, kB2},
                             {kB2, kA2, kB2},
                             {kB2, kB2, kA2}}},
                           {kW0, kW1, kW1, kW1, kW2, kW2, kW2}};

double sin_index(std::size_t k, std::size_t i, std::size_t m) {
    // sin(k i pi / M) with exact reduction of k*i modulo 2M
    const std::size_t r = (k * i) % (2 * m);
    return sin_pi(static_cast<double>(r) / static_cast<double>(m));
}

// Sutherland-Hodgman clip of a convex polygon against a <= coord[axis] (keep_ge)
// or coord[axis] <= a.
std::vector<Point> clip(const std::vector<Point>& poly, int axis, double a, bool keep_ge) {
    std::vector<Point> out;
    const std::size_t n = poly.size();
    auto inside = [&](const Point& p) { return keep_ge ? p[axis] >= a : p[axis] <= a; };
    for (std::size_t i = 0; i < n; ++i) {
        const Point& cur = poly[i];
        const Point& prev = poly[(i + n - 1) % n];
        const bool ci = inside(cur);
        const bool pi = inside(prev);
        if (ci != pi) {
            const double s = (a - prev[axis]) / (cur[axis] - prev[axis]);
            out.push_back({prev[0] + s * (cur[0] - prev[0]), prev[1] + s * (cur[1] - prev[1])});
        }
        if (ci) out.push_back(cur);
    }
    return out;
}

// Area and centroid of a simple polygon.
void polygon_moments(const std::vector<Point>& poly, double& area, Point& centroid) {
    double a2 = 0.0, cx = 0.0, cy = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % n];
        const double cross = p[0] * q[1] - q[0] * p[1];
        a2 += cross;
        cx += (p[0] + q[0]) * cross;
        cy += (p[1] + q[1]) * cross;
    }
    area = 0.5 * a2;
    if (area != 0.0) centroid = {cx / (3.0 * a2), cy / (3.0 * a2)};
    if (area < 0.0) area = -area;
}

std::array<double, 3> barycentric(const std::array<Point, 3>& t, const Point& p) {
    const double det = (t[1][1] - t[2][1]) * (t[0][0] - t[2][0]) + (t[2][0] - t[1][0]) * (t[0][1] - t[2][1]);
    const double l0 = ((t[1][1] - t[2][1]) * (p[0] - t[2][0]) + (t[2][0] - t[1][0]) * (p[1] - t[2][1])) / det;
    const double l1 = ((t[2][1] - t[0][1]) * (p[0] - t[2][0]) + (t[0][0] - t[2][0]) * (p[1] - t[2][1])) / det;
    return {l0, l1, 1.0 - l0 - l1};
}

double p1_value(const MeshSpec& mesh, std::span<const double> v, double x, double y) {
    const int m = mesh.subdivisions;
    const std::size_t n = mesh.per_axis();
    auto at1 = [&](int i) { return (i <= 0 || i >= m) ? 0.0 : v[static_cast<std::size_t>(i - 1)]; };
    if (mesh.dimension == 1) {
        const double s = x * m;
        int i = std::clamp(static_cast<int>(std::floor(s)), 0, m - 1);
        const double f = s - i;
        return (1.0 - f) * at1(i) + f * at1(i + 1);
    }
    auto at2 = [&](int i, int j) {
        if (i <= 0 || i >= m || j <= 0 || j >= m) return 0.0;
        return v[static_cast<std::size_t>(j - 1) * n + static_cast<std::size_t>(i - 1)];
    };
    const double sx = x * m, sy = y * m;
    const int i = std::clamp(static_cast<int>(std::floor(sx)), 0, m - 1);
    const int j = std::clamp(static_cast<int>(std::floor(sy)), 0, m - 1);
    const double s = sx - i, t = sy - j;
    const double u00 = at2(i, j), u10 = at2(i + 1, j), u11 = at2(i + 1, j + 1), u01 = at2(i, j + 1);
    if (s >= t) return u00 + s * (u10 - u00) + t * (u11 - u10);
    return u00 + s * (u11 - u01) + t * (u01 - u00);
}

}  // namespace

void MeshSpec::validate() const {
    if (dimension != 1 && dimension != 2) throw ConfigError("mesh dimension must be 1 or 2");
    if (subdivisions < 2) throw ConfigError("mesh needs at least 2 subdivisions");
}

std::size_t MeshSpec::dof() const noexcept {
    const std::size_t n = per_axis();
    return dimension == 1 ? n : n * n;
}

double MeshSpec::node_x(std::size_t p) const noexcept {
    const std::size_t n = per_axis();
    const std::size_t i = dimension == 1 ? p : p % n;
    return static_cast<double>(i + 1) * h();
}

double MeshSpec::node_y(std::size_t p) const noexcept {
    if (dimension == 1) return 0.0;
    return static_cast<double>(p / per_axis() + 1) * h();
}

SpatialOperator SpatialOperator::build(const MeshSpec& mesh, MassTreatment mass) {
    mesh.validate();
    SpatialOperator op;
    op.mesh_ = mesh;
    op.mass_ = mass;
    const std::size_t m = static_cast<std::size_t>(mesh.subdivisions);
    const std::size_t n = mesh.per_axis();
    const double h = mesh.h();

    const bool use_sine = mass == MassTreatment::Lumped || mesh.dimension == 1;
    if (use_sine) {
        auto s = std::make_shared<Eigen::MatrixXd>(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) (*s)(k, i) = sin_index(k + 1, i + 1, m);
        }
        op.sine_ = std::move(s);
        op.sine_basis_ = true;
        op.modal_ = true;

        // per-axis eigenvalues and scalings
        Vec lam1(n), mod1(n), nod1(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double half = sin_pi(static_cast<double>(k + 1) / (2.0 * m));  // sin(k pi / 2M)
            if (mass == MassTreatment::Lumped) {
                lam1[k] = 4.0 / (h * h) * half * half;
                mod1[k] = std::sqrt(2.0) * h;
                nod1[k] = std::sqrt(2.0);
            } else {
                const double c = 1.0 - 2.0 * half * half;  // cos(k pi / M)
                lam1[k] = 6.0 / (h * h) * (2.0 * half * half) / (2.0 + c);
                const double nu = std::sqrt((2.0 + c) / 6.0);
                mod1[k] = h * (4.0 + 2.0 * c) / 6.0 / nu;
                nod1[k] = 1.0 / nu;
            }
        }
        if (mesh.dimension == 1) {
            op.eigenvalues_ = lam1;
            op.to_modal_scale_ = mod1;
            op.to_nodal_scale_ = nod1;
        } else {
            op.eigenvalues_.resize(n * n);
            op.to_modal_scale_.assign(n * n, 2.0 * h * h);
            op.to_nodal_scale_.assign(n * n, 2.0);
            for (std::size_t q2 = 0; q2 < n; ++q2) {
                for (std::size_t q1 = 0; q1 < n; ++q1) op.eigenvalues_[q2 * n + q1] = lam1[q1] + lam1[q2];
            }
        }
        return op;
    }

    // 2D Galerkin
    Eigen::SparseMatrix<double> mc = op.mass_matrix(MassTreatment::Galerkin);
    op.mass_factor_ = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>(mc);
    if (mesh.dof() <= kDenseGalerkinMaxDof) {
        const Eigen::MatrixXd a = Eigen::MatrixXd(op.stiffness_matrix());
        const Eigen::MatrixXd b = Eigen::MatrixXd(mc);
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, b);
        if (es.info() != Eigen::Success) throw NumericalFailure("generalized eigen-decomposition failed");
        op.eigenvalues_.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
        op.dense_ = std::make_shared<Eigen::MatrixXd>(es.eigenvectors());
        op.modal_ = true;
    }
    return op;
}

void SpatialOperator::check_size(std::size_t n) const {
    if (n != dof()) {
        throw DimensionMismatch("vector of length " + std::to_string(n) + " for operator with " +
                                std::to_string(dof()) + " unknowns");
    }
}

const std::vector<double>& SpatialOperator::eigenvalues() const {
    if (!modal_) throw NumericalFailure("operator has no modal basis on this mesh");
    return eigenvalues_;
}

std::vector<double> SpatialOperator::sine_forward(std::span<const double> v) const {
    const std::size_t n = mesh_.per_axis();
    const Eigen::MatrixXd& s = *sine_;
    Vec out(v.size());
    if (mesh_.dimension == 1) {
        Eigen::Map<const Eigen::VectorXd> vin(v.data(), static_cast<Eigen::Index>(n));
        Eigen::Map<Eigen::VectorXd> vout(out.data(), static_cast<Eigen::Index>(n));
        vout.noalias() = s * vin;
    } else {
        const auto ni = static_cast<Eigen::Index>(n);
        Eigen::Map<const Eigen::MatrixXd> vin(v.data(), ni, ni);
        Eigen::Map<Eigen::MatrixXd> vout(out.data(), ni, ni);
        const Eigen::MatrixXd tmp = s * vin;
        vout.noalias() = tmp * s;  // S symmetric
    }
    return out;
}

std::vector<double> SpatialOperator::sine_backward(std::span<const double> c) const { return sine_forward(c); }

std::vector<double> SpatialOperator::to_modal(std::span<const double> nodal) const {
    check_size(nodal.size());
    if (!modal_) throw NumericalFailure("operator has no modal basis on this mesh");
    if (sine_basis_) {
        Vec c = sine_forward(nodal);
        for (std::size_t q = 0; q < c.size(); ++q) c[q] *= to_modal_scale_[q];
        return c;
    }
    const Vec mv = apply_mass(nodal);
    Eigen::Map<const Eigen::VectorXd> x(mv.data(), static_cast<Eigen::Index>(mv.size()));
    Vec c(mv.size());
    Eigen::Map<Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())).noalias() = dense_->transpose() * x;
    return c;
}

std::vector<double> SpatialOperator::to_nodal(std::span<const double> modal) const {
    check_size(modal.size());
    if (!modal_) throw NumericalFailure("operator has no modal basis on this mesh");
    if (sine_basis_) {
        Vec c(modal.begin(), modal.end());
        for (std::size_t q = 0; q < c.size(); ++q) c[q] *= to_nodal_scale_[q];
        return sine_backward(c);
    }
    Eigen::Map<const Eigen::VectorXd> x(modal.data(), static_cast<Eigen::Index>(modal.size()));
    Vec v(modal.size());
    Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())).noalias() = (*dense_) * x;
    return v;
}

std::vector<double> SpatialOperator::eigenvector(std::size_t q) const {
    if (!modal_) throw NumericalFailure("operator has no modal basis on this mesh");
    Vec e(dof(), 0.0);
    e.at(q) = 1.0;
    return to_nodal(e);
}

std::vector<double> SpatialOperator::apply_stiffness(std::span<const double> v) const {
    check_size(v.size());
    const std::size_t n = mesh_.per_axis();
    Vec out(v.size());
    if (mesh_.dimension == 1) {
        const double inv_h = 1.0 / mesh_.h();
        for (std::size_t i = 0; i < n; ++i) {
            const double l = i > 0 ? v[i - 1] : 0.0;
            const double r = i + 1 < n ? v[i + 1] : 0.0;
            out[i] = inv_h * (2.0 * v[i] - l - r);
        }
        return out;
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t p = j * n + i;
            double s = 4.0 * v[p];
            if (i > 0) s -= v[p - 1];
            if (i + 1 < n) s -= v[p + 1];
            if (j > 0) s -= v[p - n];
            if (j + 1 < n) s -= v[p + n];
            out[p] = s;
        }
    }
    return out;
}

std::vector<double> SpatialOperator::apply_mass(std::span<const double> v) const {
    check_size(v.size());
    const std::size_t n = mesh_.per_axis();
    const double h = mesh_.h();
    Vec out(v.size());
    if (mass_ == MassTreatment::Lumped) {
        const double w = mesh_.dimension == 1 ? h : h * h;
        for (std::size_t p = 0; p < v.size(); ++p) out[p] = w * v[p];
        return out;
    }
    if (mesh_.dimension == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            const double l = i > 0 ? v[i - 1] : 0.0;
            const double r = i + 1 < n ? v[i + 1] : 0.0;
            out[i] = h / 6.0 * (4.0 * v[i] + l + r);
        }
        return out;
    }
    const double c = h * h / 2.0, e = h * h / 12.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t p = j * n + i;
            double s = c * v[p];
            double nb = 0.0;
            if (i > 0) nb += v[p - 1];
            if (i + 1 < n) nb += v[p + 1];
            if (j > 0) nb += v[p - n];
            if (j + 1 < n) nb += v[p + n];
            if (i + 1 < n && j + 1 < n) nb += v[p + n + 1];  // NE
            if (i > 0 && j > 0) nb += v[p - n - 1];          // SW
            out[p] = s + e * nb;
        }
    }
    return out;
}

std::vector<double> SpatialOperator::solve_mass(std::span<const double> rhs) const {
    check_size(rhs.size());
    if (mass_ == MassTreatment::Lumped) {
        const double w = mesh_.dimension == 1 ? mesh_.h() : mesh_.h() * mesh_.h();
        Vec out(rhs.begin(), rhs.end());
        for (double& x : out) x /= w;
        return out;
    }
    if (modal_) {
        // Mass^{-1} = Phi Phi^T for a Mass-orthonormal basis
        Vec c(rhs.size());
        if (sine_basis_) {
            c = sine_forward(rhs);
            for (std::size_t q = 0; q < c.size(); ++q) c[q] *= to_nodal_scale_[q];
        } else {
            Eigen::Map<const Eigen::VectorXd> x(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
            Eigen::Map<Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())).noalias() =
                dense_->transpose() * x;
        }
        return to_nodal(c);
    }
    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    const Eigen::VectorXd x = mass_factor_->solve(b);
    return Vec(x.data(), x.data() + x.size());
}

std::vector<double> SpatialOperator::apply_laplacian(std::span<const double> v) const {
    Vec av = apply_stiffness(v);
    Vec out = solve_mass(av);
    for (double& x : out) x = -x;
    return out;
}

std::vector<double> SpatialOperator::apply_shifted(double shift, std::span<const double> v) const {
    Vec out = apply_laplacian(v);
    for (std::size_t p = 0; p < out.size(); ++p) out[p] = shift * v[p] - out[p];
    return out;
}

std::vector<double> SpatialOperator::shifted_solve(double shift, std::span<const double> rhs) const {
    return shifted_solver(shift).solve(rhs);
}

ShiftedSolver SpatialOperator::shifted_solver(double shift) const { return ShiftedSolver(*this, shift); }

double SpatialOperator::inner(std::span<const double> v, std::span<const double> w) const {
    check_size(w.size());
    const Vec mw = apply_mass(w);
    double s = 0.0;
    for (std::size_t p = 0; p < v.size(); ++p) s += v[p] * mw[p];
    return s;
}

double SpatialOperator::norm(std::span<const double> v) const { return std::sqrt(std::max(0.0, inner(v, v))); }

double SpatialOperator::norm(std::span<const double> v, MassTreatment which) const {
    check_size(v.size());
    if (which == MassTreatment::Lumped) {
        const double w = mesh_.dimension == 1 ? mesh_.h() : mesh_.h() * mesh_.h();
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(w * s);
    }
    const Eigen::SparseMatrix<double> mc = mass_matrix(MassTreatment::Galerkin);
    Eigen::Map<const Eigen::VectorXd> x(v.data(), static_cast<Eigen::Index>(v.size()));
    return std::sqrt(std::max(0.0, x.dot(mc * x)));
}

Eigen::SparseMatrix<double> SpatialOperator::stiffness_matrix() const {
    const std::size_t n = mesh_.per_axis();
    const auto N = static_cast<Eigen::Index>(dof());
    std::vector<Eigen::Triplet<double>> trip;
    if (mesh_.dimension == 1) {
        const double inv_h = 1.0 / mesh_.h();
        for (std::size_t i = 0; i < n; ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            trip.emplace_back(ii, ii, 2.0 * inv_h);
            if (i > 0) trip.emplace_back(ii, ii - 1, -inv_h);
            if (i + 1 < n) trip.emplace_back(ii, ii + 1, -inv_h);
        }
    } else {
        const auto nn = static_cast<Eigen::Index>(n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                const auto p = static_cast<Eigen::Index>(j * n + i);
                trip.emplace_back(p, p, 4.0);
                if (i > 0) trip.emplace_back(p, p - 1, -1.0);
                if (i + 1 < n) trip.emplace_back(p, p + 1, -1.0);
                if (j > 0) trip.emplace_back(p, p - nn, -1.0);
                if (j + 1 < n) trip.emplace_back(p, p + nn, -1.0);
            }
        }
    }
    Eigen::SparseMatrix<double> a(N, N);
    a.setFromTriplets(trip.begin(), trip.end());
    return a;
}

Eigen::SparseMatrix<double> SpatialOperator::mass_matrix(MassTreatment which) const {
    const std::size_t n = mesh_.per_axis();
    const auto N = static_cast<Eigen::Index>(dof());
    const double h = mesh_.h();
    std::vector<Eigen::Triplet<double>> trip;
    if (which == MassTreatment::Lumped) {
        const double w = mesh_.dimension == 1 ? h : h * h;
        for (Eigen::Index p = 0; p < N; ++p) trip.emplace_back(p, p, w);
    } else if (mesh_.dimension == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            trip.emplace_back(ii, ii, 4.0 * h / 6.0);
            if (i > 0) trip.emplace_back(ii, ii - 1, h / 6.0);
            if (i + 1 < n) trip.emplace_back(ii, ii + 1, h / 6.0);
        }
    } else {
        const auto nn = static_cast<Eigen::Index>(n);
        const double c = h * h / 2.0, e = h * h / 12.0;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                const auto p = static_cast<Eigen::Index>(j * n + i);
                trip.emplace_back(p, p, c);
                if (i > 0) trip.emplace_back(p, p - 1, e);
                if (i + 1 < n) trip.emplace_back(p, p + 1, e);
                if (j > 0) trip.emplace_back(p, p - nn, e);
                if (j + 1 < n) trip.emplace_back(p, p + nn, e);
                if (i + 1 < n && j + 1 < n) trip.emplace_back(p, p + nn + 1, e);
                if (i > 0 && j > 0) trip.emplace_back(p, p - nn - 1, e);
            }
        }
    }
    Eigen::SparseMatrix<double> mm(N, N);
    mm.setFromTriplets(trip.begin(), trip.end());
    return mm;
}

std::vector<double> SpatialOperator::load_vector(const SpatialProfile& g) const {
    const int m = mesh_.subdivisions;
    const std::size_t n = mesh_.per_axis();
    const double h = mesh_.h();
    Vec b(dof(), 0.0);
    if (g.is_zero()) return b;
    const auto& par = g.params();

    if (mesh_.dimension == 1) {
        auto add = [&](int node, double val) {
            if (node >= 1 && node <= m - 1) b[static_cast<std::size_t>(node - 1)] += val;
        };
        for (int e = 0; e < m; ++e) {
            const double xl = e * h, xr = (e + 1) * h;
            double left = 0.0, right = 0.0;  // against (xr - x)/h and (x - xl)/h
            switch (g.kind()) {
                case SpatialProfile::Kind::Constant:
                    left = right = par[0] * h / 2.0;
                    break;
                case SpatialProfile::Kind::Indicator: {
                    const double p = std::max(xl, par[0]), q = std::min(xr, par[1]);
                    if (p < q) {
                        const double mid = 0.5 * (p + q);
                        left = (q - p) * (xr - mid) / h;
                        right = (q - p) * (mid - xl) / h;
                    }
                    break;
                }
                case SpatialProfile::Kind::Power:
                    if (e == 0) {
                        const double pw = par[0];
                        const double hp = std::pow(h, pw + 1.0);
                        left = hp / ((pw + 1.0) * (pw + 2.0));
                        right = hp / (pw + 2.0);
                        break;
                    }
                    [[fallthrough]];
                default:
                    for (std::size_t k = 0; k < kGaussX.size(); ++k) {
                        const double x = xl + 0.5 * h * (kGaussX[k] + 1.0);
                        const double gv = 0.5 * h * kGaussW[k] * g(x);
                        left += gv * (xr - x) / h;
                        right += gv * (x - xl) / h;
                    }
            }
            add(e, left);
            add(e + 1, right);
        }
        return b;
    }

    auto add2 = [&](int i, int j, double val) {
        if (i >= 1 && i <= m - 1 && j >= 1 && j <= m - 1) {
            b[static_cast<std::size_t>(j - 1) * n + static_cast<std::size_t>(i - 1)] += val;
        }
    };
    const double area = 0.5 * h * h;
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            const std::array<std::array<std::array<int, 2>, 3>, 2> tris{{
                {{{i, j}, {i + 1, j}, {i + 1, j + 1}}},
                {{{i, j}, {i + 1, j + 1}, {i, j + 1}}},
            }};
            for (const auto& tri : tris) {
                std::array<Point, 3> pts;
                for (int a = 0; a < 3; ++a) pts[a] = {tri[a][0] * h, tri[a][1] * h};
                std::array<double, 3> contrib{0.0, 0.0, 0.0};
                if (g.kind() == SpatialProfile::Kind::Constant) {
                    contrib.fill(par[0] * area / 3.0);
                } else if (g.kind() == SpatialProfile::Kind::Indicator2D) {
                    std::vector<Point> poly(pts.begin(), pts.end());
                    poly = clip(poly, 0, par[0], true);
                    if (poly.size() >= 3) poly = clip(poly, 0, par[1], false);
                    if (poly.size() >= 3) poly = clip(poly, 1, par[2], true);
                    if (poly.size() >= 3) poly = clip(poly, 1, par[3], false);
                    if (poly.size() >= 3) {
                        double a = 0.0;
                        Point c{0.0, 0.0};
                        polygon_moments(poly, a, c);
                        if (a > 0.0) {
                            const auto lam = barycentric(pts, c);
                            for (int k = 0; k < 3; ++k) contrib[k] = a * lam[k];
                        }
                    }
                } else {
                    for (std::size_t q = 0; q < kTriRule.w.size(); ++q) {
                        const auto& l = kTriRule.bary[q];
                        const double x = l[0] * pts[0][0] + l[1] * pts[1][0] + l[2] * pts[2][0];
                        const double y = l[0] * pts[0][1] + l[1] * pts[1][1] + l[2] * pts[2][1];
                        const double gv = area * kTriRule.w[q] * g(x, y);
                        for (int k = 0; k < 3; ++k) contrib[k] += gv * l[k];
                    }
                }
                for (int k = 0; k < 3; ++k) add2(tri[k][0], tri[k][1], contrib[k]);
            }
        }
    }
    return b;
}

std::vector<double> SpatialOperator::project(const SpatialProfile& g, ProjectionRule rule) const {
    if (rule == ProjectionRule::Interpolation) {
        Vec v(dof());
        for (std::size_t p = 0; p < v.size(); ++p) {
            v[p] = g(mesh_.node_x(p), mesh_.node_y(p));
            if (!std::isfinite(v[p])) {
                throw NumericalFailure("profile '" + g.name() + "' is not finite at an interior node");
            }
        }
        return v;
    }
    return solve_mass(load_vector(g));
}

std::vector<double> SpatialOperator::project_source(const SpatialProfile& g, ProjectionRule rule) const {
    return to_modal(project(g, rule));
}

double SpatialOperator::evaluate(std::span<const double> v, double x, double y) const {
    check_size(v.size());
    return p1_value(mesh_, v, x, y);
}

ShiftedSolver::ShiftedSolver(const SpatialOperator& op, double shift) : op_(&op), shift_(shift) {
    if (!(shift > 0.0)) throw DomainError("shifted solve needs shift > 0");
    if (!op.has_modal_basis()) {
        mass_ = op.mass_matrix(op.mass());
        Eigen::SparseMatrix<double> k = op.stiffness_matrix() + shift * mass_;
        auto f = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>(k);
        if (f->info() != Eigen::Success) throw NumericalFailure("factorization of shifted operator failed");
        factor_ = std::move(f);
    }
}

std::vector<double> ShiftedSolver::solve(std::span<const double> rhs) const {
    if (rhs.size() != op_->dof()) throw DimensionMismatch("rhs length does not match operator");
    if (factor_) {
        Eigen::Map<const Eigen::VectorXd> r(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
        const Eigen::VectorXd mr = mass_ * r;
        const Eigen::VectorXd x = factor_->solve(mr);
        return std::vector<double>(x.data(), x.data() + x.size());
    }
    std::vector<double> c = op_->to_modal(rhs);
    const auto& lam = op_->eigenvalues();
    for (std::size_t q = 0; q < c.size(); ++q) c[q] /= (shift_ + lam[q]);
    return op_->to_nodal(c);
}

std::vector<double> restrict_to_coarse(const MeshSpec& fine, std::span<const double> v, const MeshSpec& coarse) {
    fine.validate();
    coarse.validate();
    if (fine.dimension != coarse.dimension || fine.subdivisions % coarse.subdivisions != 0) {
        throw ConfigError("meshes are not nested");
    }
    if (v.size() != fine.dof()) throw DimensionMismatch("fine vector length does not match mesh");
    const std::size_t r = static_cast<std::size_t>(fine.subdivisions / coarse.subdivisions);
    const std::size_t nf = fine.per_axis(), nc = coarse.per_axis();
    Vec out(coarse.dof());
    if (fine.dimension == 1) {
        for (std::size_t i = 0; i < nc; ++i) out[i] = v[(i + 1) * r - 1];
    } else {
        for (std::size_t j = 0; j < nc; ++j) {
            for (std::size_t i = 0; i < nc; ++i) out[j * nc + i] = v[((j + 1) * r - 1) * nf + (i + 1) * r - 1];
        }
    }
    return out;
}

std::vector<double> interpolate_to_fine(const MeshSpec& coarse, std::span<const double> v, const MeshSpec& fine) {
    fine.validate();
    coarse.validate();
    if (fine.dimension != coarse.dimension || fine.subdivisions % coarse.subdivisions != 0) {
        throw ConfigError("meshes are not nested");
    }
    if (v.size() != coarse.dof()) throw DimensionMismatch("coarse vector length does not match mesh");
    Vec out(fine.dof());
    for (std::size_t p = 0; p < out.size(); ++p) out[p] = p1_value(coarse, v, fine.node_x(p), fine.node_y(p));
    return out;
}

}  // namespace fracsub
