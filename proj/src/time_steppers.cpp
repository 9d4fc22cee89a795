#include "fracsub/time_steppers.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include "fracsub/error.hpp"

namespace fracsub {

namespace {

constexpr std::size_t kLanes = 16;

bool integrates_u(Scheme s) { return s == Scheme::GLBE || s == Scheme::FBDF22; }

// u^n from the stored sequence X (U for GLBE/FBDF22, u itself otherwise).
double derive(Scheme s, double tau, double xn, double xn1, double xn2) {
    switch (s) {
        case Scheme::GLBE: return (xn - xn1) / tau;
        case Scheme::FBDF22: return (1.5 * xn - 2.0 * xn1 + 0.5 * xn2) / tau;
        default: return xn;
    }
}

}  // namespace

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::GLBE: return "GLBE";
        case Scheme::FBDF22: return "FBDF22";
        case Scheme::CorrectedBE: return "CorrectedBE";
        case Scheme::UncorrectedSBD: return "UncorrectedSBD";
    }
    return "?";
}

Scheme parse_scheme(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "glbe") return Scheme::GLBE;
    if (s == "fbdf22") return Scheme::FBDF22;
    if (s == "cbe" || s == "correctedbe") return Scheme::CorrectedBE;
    if (s == "usbd" || s == "uncorrectedsbd") return Scheme::UncorrectedSBD;
    throw ConfigError("unknown scheme '" + std::string(text) + "'");
}

CqScheme weights_of(Scheme s) noexcept {
    return (s == Scheme::GLBE || s == Scheme::CorrectedBE) ? CqScheme::GL : CqScheme::FBDF2;
}

int nominal_order(Scheme s) noexcept { return (s == Scheme::FBDF22 || s == Scheme::UncorrectedSBD) ? 2 : 1; }

void TimeGrid::validate() const {
    if (!(T > 0.0)) throw DomainError("final time must be positive");
    if (N < 1) throw DomainError("step count must be at least 1");
}

void TimeStepperConfig::validate() const {
    FractionalOrder a(alpha);
    (void)a;
    grid.validate();
}

void LinearSystem::validate() const {
    if (op != nullptr) {
        if (op->dof() != dim) throw DimensionMismatch("operator size differs from system dimension");
    } else if (diagonal.size() != dim) {
        throw DimensionMismatch("diagonal size differs from system dimension");
    }
    if (term_vectors.size() != source.terms.size()) throw DimensionMismatch("one spatial vector per source term expected");
    for (const auto& g : term_vectors) {
        if (g.size() != dim) throw DimensionMismatch("source vector size differs from system dimension");
    }
    if (!initial.empty() && initial.size() != dim) throw DimensionMismatch("initial vector size differs");
    source.validate();
}

LinearSystem scalar_system(double lambda, const SourceSpec& src, double u0) {
    LinearSystem sys;
    sys.dim = 1;
    sys.diagonal = {-lambda};
    sys.source = src;
    sys.term_vectors.assign(src.terms.size(), std::vector<double>{1.0});
    if (u0 != 0.0) sys.initial = {u0};
    return sys;
}

namespace {

LinearSystem pde_system(const SpatialOperator& op, const SourceSpec& src, const InitialData& u0,
                        ProjectionChoice rules, bool modal) {
    LinearSystem sys;
    sys.dim = op.dof();
    sys.source = src;
    if (modal) {
        sys.diagonal = op.eigenvalues();
    } else {
        sys.op = &op;
    }
    for (const auto& term : src.terms) {
        auto v = op.project(term.profile, rules.source);
        sys.term_vectors.push_back(modal ? op.to_modal(v) : std::move(v));
    }
    if (!u0.is_zero()) {
        auto v = op.project(u0.profile, rules.initial);
        sys.initial = modal ? op.to_modal(v) : std::move(v);
    }
    return sys;
}

}  // namespace

LinearSystem modal_system(const SpatialOperator& op, const SourceSpec& src, const InitialData& u0,
                          ProjectionChoice rules) {
    return pde_system(op, src, u0, rules, true);
}

LinearSystem nodal_system(const SpatialOperator& op, const SourceSpec& src, const InitialData& u0,
                          ProjectionChoice rules) {
    return pde_system(op, src, u0, rules, false);
}

StepFactors step_factors(const TimeStepperConfig& cfg, const SourceSpec& src) {
    cfg.validate();
    const int N = cfg.grid.N;
    const double tau = cfg.grid.tau();
    StepFactors f;
    f.terms = src.terms.size();
    f.source.assign(static_cast<std::size_t>(N + 1) * f.terms, 0.0);
    f.initial.assign(static_cast<std::size_t>(N + 1), 0.0);

    CqKernel kernel = make_kernel(weights_of(cfg.scheme), FractionalOrder(cfg.alpha), static_cast<std::size_t>(N));
    const double scale = std::pow(tau, -cfg.alpha);
    double partial = 0.0;

    for (int n = 1; n <= N; ++n) {
        const double t = cfg.grid.t(n);
        double* row = f.source.data() + static_cast<std::size_t>(n) * f.terms;
        switch (cfg.scheme) {
            case Scheme::GLBE: {
                const auto F = eval_F(src, t);
                std::copy(F.begin(), F.end(), row);
                f.initial[n] = correction_factor(cfg.alpha, t, 1);
                break;
            }
            case Scheme::FBDF22: {
                const auto d = bdf2_diff_Ftilde(src, n, tau);
                std::copy(d.begin(), d.end(), row);
                f.initial[n] = bdf2_diff_correction(cfg.alpha, n, tau);
                break;
            }
            case Scheme::CorrectedBE:
            case Scheme::UncorrectedSBD: {
                const auto v = eval_f(src, t);
                std::copy(v.begin(), v.end(), row);
                if (n == 1) partial = kernel[0];
                partial += kernel[static_cast<std::size_t>(n)];
                f.initial[n] = scale * partial;
                break;
            }
        }
    }
    return f;
}

Stepper::Stepper(const TimeStepperConfig& cfg, LinearSystem system)
    : cfg_(cfg),
      sys_(std::move(system)),
      kernel_(make_kernel(weights_of(cfg.scheme), FractionalOrder(cfg.alpha), static_cast<std::size_t>(cfg.grid.N))) {
    cfg_.validate();
    sys_.validate();
    factors_ = step_factors(cfg_, sys_.source);
    const std::size_t dim = sys_.dim;
    history_.assign(static_cast<std::size_t>(cfg_.grid.N + 1) * dim, 0.0);
    initial_ = sys_.initial.empty() ? std::vector<double>(dim, 0.0) : sys_.initial;
    if (!integrates_u(cfg_.scheme)) std::copy(initial_.begin(), initial_.end(), history_.begin());
    shift_ = std::pow(cfg_.grid.tau(), -cfg_.alpha) * kernel_[0];
    if (sys_.op != nullptr) solver_ = std::make_unique<ShiftedSolver>(*sys_.op, shift_);
}

std::span<const double> Stepper::stored(int n) const {
    if (n < 0 || n > n_) throw DomainError("step index outside the computed range");
    return {history_.data() + static_cast<std::size_t>(n) * sys_.dim, sys_.dim};
}

std::vector<double> Stepper::u(int n) const {
    if (n < 0 || n > n_) throw DomainError("step index outside the computed range");
    if (n == 0) return initial_;
    const std::size_t dim = sys_.dim;
    const double tau = cfg_.grid.tau();
    std::vector<double> out(dim);
    const double* xn = history_.data() + static_cast<std::size_t>(n) * dim;
    const double* xn1 = xn - dim;
    const double* xn2 = n >= 2 ? xn - 2 * dim : nullptr;
    for (std::size_t i = 0; i < dim; ++i) {
        out[i] = derive(cfg_.scheme, tau, xn[i], xn1[i], xn2 ? xn2[i] : 0.0);
    }
    return out;
}

std::vector<double> Stepper::rhs(int n) const {
    if (n < 1 || n > n_ + 1 || n > cfg_.grid.N) throw DomainError("right-hand side requested for an unavailable step");
    const std::size_t dim = sys_.dim;
    std::vector<double> acc(dim, 0.0);
    for (int j = 1; j <= n; ++j) {
        const double w = kernel_[static_cast<std::size_t>(j)];
        const double* x = history_.data() + static_cast<std::size_t>(n - j) * dim;
        for (std::size_t i = 0; i < dim; ++i) acc[i] += w * x[i];
    }
    const double scale = std::pow(cfg_.grid.tau(), -cfg_.alpha);
    const double* fac = factors_.source.data() + static_cast<std::size_t>(n) * factors_.terms;
    const double ci = factors_.initial[static_cast<std::size_t>(n)];
    std::vector<double> r(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < factors_.terms; ++k) s += fac[k] * sys_.term_vectors[k][i];
        r[i] = s + ci * initial_[i] - scale * acc[i];
    }
    return r;
}

void Stepper::solve_step() {
    if (n_ >= cfg_.grid.N) throw DomainError("all steps already taken");
    const int n = n_ + 1;
    std::vector<double> r = rhs(n);
    double* x = history_.data() + static_cast<std::size_t>(n) * sys_.dim;
    if (solver_) {
        const auto v = solver_->solve(r);
        for (std::size_t i = 0; i < sys_.dim; ++i) {
            if (!std::isfinite(v[i])) throw NumericalFailure("non-finite value in time step");
            x[i] = v[i];
        }
    } else {
        for (std::size_t i = 0; i < sys_.dim; ++i) {
            x[i] = r[i] / (shift_ + sys_.diagonal[i]);
            if (!std::isfinite(x[i])) throw NumericalFailure("non-finite value in time step");
        }
    }
    n_ = n;
}

void step_glbe(Stepper& s) {
    if (s.cfg_.scheme != Scheme::GLBE) throw ConfigError("stepper is not configured for GLBE");
    s.solve_step();
}

void step_fbdf22(Stepper& s) {
    if (s.cfg_.scheme != Scheme::FBDF22) throw ConfigError("stepper is not configured for FBDF22");
    s.solve_step();
}

void step_baseline(Stepper& s) {
    if (integrates_u(s.cfg_.scheme)) throw ConfigError("stepper is not configured for a baseline scheme");
    s.solve_step();
}

void Stepper::step() {
    switch (cfg_.scheme) {
        case Scheme::GLBE: step_glbe(*this); break;
        case Scheme::FBDF22: step_fbdf22(*this); break;
        default: step_baseline(*this); break;
    }
}

namespace {

// Diagonal systems: components are independent scalar recurrences, advanced
// kLanes at a time so the history convolution vectorizes. The arithmetic per
// component matches Stepper exactly.
RunResult run_diagonal(const TimeStepperConfig& cfg, const LinearSystem& sys, bool keep) {
    const int N = cfg.grid.N;
    const std::size_t dim = sys.dim;
    const double tau = cfg.grid.tau();
    const double scale = std::pow(tau, -cfg.alpha);
    const CqKernel kernel = make_kernel(weights_of(cfg.scheme), FractionalOrder(cfg.alpha), static_cast<std::size_t>(N));
    const StepFactors fac = step_factors(cfg, sys.source);
    const double shift = scale * kernel[0];
    const bool from_zero = integrates_u(cfg.scheme);

    RunResult res;
    res.final_u.assign(dim, 0.0);
    if (keep) res.trajectory.assign(static_cast<std::size_t>(N + 1), std::vector<double>(dim, 0.0));
    if (keep && !sys.initial.empty()) res.trajectory[0] = sys.initial;

    std::vector<double> hist(static_cast<std::size_t>(N + 1) * kLanes);
    const std::size_t terms = fac.terms;
    for (std::size_t start = 0; start < dim; start += kLanes) {
        const std::size_t nb = std::min(kLanes, dim - start);
        std::array<double, kLanes> denom{}, u0{}, acc{};
        std::vector<std::array<double, kLanes>> g(terms);
        for (std::size_t b = 0; b < kLanes; ++b) {
            denom[b] = b < nb ? shift + sys.diagonal[start + b] : 1.0;
            u0[b] = (b < nb && !sys.initial.empty()) ? sys.initial[start + b] : 0.0;
            for (std::size_t k = 0; k < terms; ++k) g[k][b] = b < nb ? sys.term_vectors[k][start + b] : 0.0;
        }
        std::fill(hist.begin(), hist.end(), 0.0);
        if (!from_zero) std::copy(u0.begin(), u0.end(), hist.begin());

        for (int n = 1; n <= N; ++n) {
            acc.fill(0.0);
            for (int j = 1; j <= n; ++j) {
                const double w = kernel[static_cast<std::size_t>(j)];
                const double* x = hist.data() + static_cast<std::size_t>(n - j) * kLanes;
                for (std::size_t b = 0; b < kLanes; ++b) acc[b] += w * x[b];
            }
            const double* f = fac.source.data() + static_cast<std::size_t>(n) * terms;
            const double ci = fac.initial[static_cast<std::size_t>(n)];
            double* xn = hist.data() + static_cast<std::size_t>(n) * kLanes;
            for (std::size_t b = 0; b < kLanes; ++b) {
                double s = 0.0;
                for (std::size_t k = 0; k < terms; ++k) s += f[k] * g[k][b];
                xn[b] = (s + ci * u0[b] - scale * acc[b]) / denom[b];
            }
            if (keep) {
                for (std::size_t b = 0; b < nb; ++b) {
                    const double x2 = n >= 2 ? xn[b - 2 * kLanes] : 0.0;
                    res.trajectory[static_cast<std::size_t>(n)][start + b] =
                        derive(cfg.scheme, tau, xn[b], xn[b - kLanes], x2);
                }
            }
        }
        const double* xN = hist.data() + static_cast<std::size_t>(N) * kLanes;
        for (std::size_t b = 0; b < nb; ++b) {
            const double x2 = N >= 2 ? xN[b - 2 * kLanes] : 0.0;
            const double v = derive(cfg.scheme, tau, xN[b], xN[b - kLanes], x2);
            if (!std::isfinite(v)) throw NumericalFailure("non-finite value in time step");
            res.final_u[start + b] = v;
        }
    }
    return res;
}

}  // namespace

RunResult run(const TimeStepperConfig& cfg, const LinearSystem& system, bool keep_trajectory) {
    cfg.validate();
    system.validate();
    if (system.op == nullptr) return run_diagonal(cfg, system, keep_trajectory);

    Stepper st(cfg, system);
    RunResult res;
    if (keep_trajectory) res.trajectory.push_back(st.u(0));
    for (int n = 1; n <= cfg.grid.N; ++n) {
        st.step();
        if (keep_trajectory) res.trajectory.push_back(st.u(n));
    }
    res.final_u = st.u(cfg.grid.N);
    return res;
}

std::vector<double> run_pde(const TimeStepperConfig& cfg, const SpatialOperator& op, const SourceSpec& src,
                            const InitialData& u0, ProjectionChoice rules, StepSpace space) {
    const bool modal = space == StepSpace::Modal || (space == StepSpace::Auto && op.has_modal_basis());
    if (modal) {
        const LinearSystem sys = modal_system(op, src, u0, rules);
        return op.to_nodal(run(cfg, sys).final_u);
    }
    const LinearSystem sys = nodal_system(op, src, u0, rules);
    return run(cfg, sys).final_u;
}

}  // namespace fracsub
