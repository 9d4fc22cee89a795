#include "fracsub/studies.hpp"

#include <cmath>
#include <exception>
#include <optional>

#include "fracsub/error.hpp"
#include "fracsub/parallel.hpp"
#include "fracsub/reference_oracle.hpp"

namespace fracsub {

namespace {

struct Outcome {
    std::optional<double> error;
    std::string message;
};

// Runs job(i) for every refinement level; rows stop at the first failure.
template <class Job>
ConvergenceReport collect(ConvergenceAxis axis, const std::vector<double>& params, Job job) {
    std::vector<Outcome> out(params.size());
    parallel_for(params.size(), [&](std::size_t i) {
        try {
            out[i].error = job(i);
        } catch (const std::exception& e) {
            out[i].message = e.what();
        }
    });
    std::vector<double> p, e;
    std::string message;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!out[i].error) {
            message = out[i].message;
            break;
        }
        p.push_back(params[i]);
        e.push_back(*out[i].error);
    }
    ConvergenceReport rep = make_report(axis, p, e);
    if (p.size() != params.size()) {
        rep.valid = false;
        rep.message = message;
    }
    return rep;
}

std::vector<double> as_params(const std::vector<int>& v) { return {v.begin(), v.end()}; }

void check_increasing(const std::vector<int>& v, const char* what) {
    if (v.empty()) throw ConfigError(std::string(what) + " list is empty");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 1) throw ConfigError(std::string(what) + " entries must be positive");
        if (i > 0 && v[i] <= v[i - 1]) throw ConfigError(std::string(what) + " list must be strictly increasing");
    }
}

SpatialProfile box(int dimension) {
    return dimension == 1 ? SpatialProfile::indicator(0.25, 0.75) : SpatialProfile::indicator2d(0.25, 0.75, 0.25, 0.75);
}

}  // namespace

double fode_error(Scheme scheme, const FodeProblem& p, int N) {
    const TimeStepperConfig cfg{scheme, p.alpha, {p.T, N}};
    const RunResult r = run(cfg, scalar_system(p.lambda, fode_power_source(p.alpha, p.nu, p.lambda)));
    return std::abs(r.final_u[0] - fode_exact(p.nu, p.T));
}

ConvergenceReport fode_study(Scheme scheme, const FodeProblem& p, const std::vector<int>& steps) {
    check_increasing(steps, "step");
    TimeStepperConfig{scheme, p.alpha, {p.T, steps.front()}}.validate();
    fode_power_source(p.alpha, p.nu, p.lambda);
    return collect(ConvergenceAxis::Time, as_params(steps),
                   [&](std::size_t i) { return fode_error(scheme, p, steps[i]); });
}

double pde_error(Scheme scheme, double alpha, const PdeProblem& p, int N) {
    return pde_temporal_study(scheme, alpha, p, {N}).rows.at(0).error;
}

ConvergenceReport pde_temporal_study(Scheme scheme, double alpha, const PdeProblem& p,
                                     const std::vector<int>& steps) {
    check_increasing(steps, "step");
    TimeStepperConfig{scheme, alpha, {p.T, steps.front()}}.validate();
    p.source.validate();
    const SpatialOperator op = SpatialOperator::build(p.mesh, p.mass);
    const std::vector<double> ref = semidiscrete_exact(op, p.source, p.initial, alpha, p.T, p.rules);
    return collect(ConvergenceAxis::Time, as_params(steps), [&](std::size_t i) {
        std::vector<double> u = run_pde({scheme, alpha, {p.T, steps[i]}}, op, p.source, p.initial, p.rules);
        for (std::size_t k = 0; k < u.size(); ++k) u[k] -= ref[k];
        return op.norm(u);
    });
}

ConvergenceReport spatial_study(double alpha, const PdeProblem& p, const std::vector<int>& subdivisions,
                                MeshComparison comparison) {
    check_increasing(subdivisions, "mesh");
    if (subdivisions.size() < 2) throw ConfigError("spatial study needs at least two meshes");
    for (std::size_t i = 1; i < subdivisions.size(); ++i)
        if (subdivisions[i] != 2 * subdivisions[i - 1]) throw ConfigError("mesh chain must halve h at every level");

    std::vector<SpatialOperator> ops;
    for (int M : subdivisions) ops.push_back(SpatialOperator::build({p.mesh.dimension, M}, p.mass));
    std::vector<std::vector<double>> sol(ops.size());
    parallel_for(ops.size(), [&](std::size_t i) {
        sol[i] = semidiscrete_exact(ops[i], p.source, p.initial, alpha, p.T, p.rules);
    });

    std::vector<double> params(subdivisions.begin() + 1, subdivisions.end());
    return collect(ConvergenceAxis::Space, params, [&](std::size_t i) {
        const SpatialOperator& coarse = ops[i];
        const SpatialOperator& fine = ops[i + 1];
        if (comparison == MeshComparison::RestrictToCoarse) {
            std::vector<double> d = restrict_to_coarse(fine.mesh(), sol[i + 1], coarse.mesh());
            for (std::size_t k = 0; k < d.size(); ++k) d[k] -= sol[i][k];
            return coarse.norm(d);
        }
        std::vector<double> d = interpolate_to_fine(coarse.mesh(), sol[i], fine.mesh());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] -= sol[i + 1][k];
        return fine.norm(d, MassTreatment::Galerkin);
    });
}

PdeProblem fully_discrete_example(int dimension, char example_case, double mu, int subdivisions) {
    if (dimension != 1 && dimension != 2) throw ConfigError("dimension must be 1 or 2");
    PdeProblem p;
    p.mesh = {dimension, subdivisions};
    p.mesh.validate();
    p.rules = {ProjectionRule::L2, ProjectionRule::L2};
    if (example_case == 'a') {
        if (dimension == 1) {
            p.source.terms = {SourceTerm::power(1.0, mu, SpatialProfile::power(-0.25))};
        } else {
            p.source.terms = {SourceTerm::power(1.0, 0.0, box(2)), SourceTerm::power(1.0, mu, box(2))};
        }
    } else if (example_case == 'b') {
        p.initial.profile = box(dimension);
    } else {
        throw ConfigError(std::string("unknown example case '") + example_case + "'");
    }
    return p;
}

PdeProblem spatial_example(int dimension, double mu) {
    if (dimension != 1 && dimension != 2) throw ConfigError("dimension must be 1 or 2");
    PdeProblem p;
    p.mesh = {dimension, 8};
    const SpatialProfile g = dimension == 1 ? SpatialProfile::power(-0.25) : box(2);
    p.source.terms = {SourceTerm::power(1.0, 0.0, g), SourceTerm::power(1.0, mu, g)};
    return p;
}

void RunConfig::validate() const {
    FractionalOrder a(alpha);
    (void)a;
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("final time must be positive");
    if (!custom_data && exponents.empty()) throw ConfigError("exponent list is empty");
    for (double e : exponents) {
        if (kind == StudyKind::Fode) {
            if (e < alpha - 1.0 - 1e-12) throw DomainError("nu must satisfy nu >= alpha - 1");
        } else if (!(e > -1.0)) {
            throw DomainError("mu must exceed -1");
        }
    }
    if (kind == StudyKind::Space) {
        check_increasing(subdivisions, "mesh");
    } else {
        check_increasing(steps, "step");
        if (kind == StudyKind::PdeTime && subdivisions.empty()) throw ConfigError("mesh list is empty");
    }
    if (kind != StudyKind::Fode && dimension != 1 && dimension != 2) throw ConfigError("dimension must be 1 or 2");
    if (custom_data) source.validate();
}

namespace {

PdeProblem problem_of(const RunConfig& cfg, double exponent) {
    PdeProblem p;
    if (cfg.custom_data) {
        p.mesh = {cfg.dimension, cfg.subdivisions.front()};
        p.source = cfg.source;
        p.initial = cfg.initial;
        p.rules = cfg.rules;
    } else if (cfg.kind == StudyKind::Space) {
        p = spatial_example(cfg.dimension, exponent);
    } else {
        p = fully_discrete_example(cfg.dimension, cfg.example_case, exponent, cfg.subdivisions.front());
    }
    p.mass = cfg.mass;
    p.T = cfg.T;
    return p;
}

}  // namespace

ConvergenceReport temporal_study(const RunConfig& cfg, double exponent) {
    cfg.validate();
    if (cfg.kind == StudyKind::Fode)
        return fode_study(cfg.scheme, {cfg.alpha, exponent, cfg.lambda, cfg.T}, cfg.steps);
    if (cfg.kind != StudyKind::PdeTime) throw ConfigError("temporal study needs a fode or pde configuration");
    return pde_temporal_study(cfg.scheme, cfg.alpha, problem_of(cfg, exponent), cfg.steps);
}

std::vector<ConvergenceReport> run_study(const RunConfig& cfg) {
    cfg.validate();
    std::vector<double> exps = cfg.exponents;
    if (cfg.custom_data && cfg.kind != StudyKind::Fode) exps = {0.0};
    std::vector<ConvergenceReport> out;
    for (double e : exps) {
        if (cfg.kind == StudyKind::Space) {
            out.push_back(spatial_study(cfg.alpha, problem_of(cfg, e), cfg.subdivisions, cfg.comparison));
        } else {
            out.push_back(temporal_study(cfg, e));
        }
    }
    return out;
}

}  // namespace fracsub
