#include "fracsub/source_model.hpp"

#include <cmath>
#include <string>

#include "fracsub/error.hpp"
#include "fracsub/gamma.hpp"

namespace fracsub {

namespace {

// Exponents this close to -1 are treated as the Dirac limit.
constexpr double kDiracSnap = 1e-12;

// weight * t^p / Gamma(p+1) for t > 0, p >= 0 (p = 0 gives the step).
double normalized_power(double weight, double t, double p) {
    if (t <= 0.0) return 0.0;
    return weight * std::pow(t, p) * rgamma(p + 1.0);
}

// n^p - (n-1)^p for n >= 1, p > 0, without cancellation.
double power_step(int n, double p) {
    if (n <= 0) return 0.0;
    if (n == 1) return 1.0;
    const double x = static_cast<double>(n);
    return -std::pow(x, p) * std::expm1(p * std::log1p(-1.0 / x));
}

// D_tau of t^p/Gamma(p+1) at t_n = n tau.
double bdf2_power(int n, double tau, double p) {
    const double d = 1.5 * power_step(n, p) - 0.5 * power_step(n - 1, p);
    return std::pow(tau, p - 1.0) * rgamma(p + 1.0) * d;
}

}  // namespace

SourceTerm SourceTerm::power(double c, double mu, SpatialProfile g) {
    if (!(mu > -1.0)) throw DomainError("source exponent must exceed -1, got " + std::to_string(mu));
    return {c * gamma_fn(mu + 1.0), mu, std::move(g)};
}

SourceTerm SourceTerm::dirac(double weight, SpatialProfile g) { return {weight, -1.0, std::move(g)}; }

double SourceTerm::coefficient() const { return is_dirac() ? 0.0 : weight * rgamma(mu + 1.0); }

void SourceSpec::validate() const {
    for (const auto& term : terms) {
        if (!(term.mu >= -1.0)) throw DomainError("source exponent below -1: " + std::to_string(term.mu));
        if (!std::isfinite(term.weight)) throw DomainError("source weight is not finite");
    }
}

std::vector<double> eval_f(const SourceSpec& src, double t) {
    std::vector<double> out;
    out.reserve(src.terms.size());
    for (const auto& term : src.terms) {
        if (term.is_dirac()) {
            out.push_back(0.0);
            continue;
        }
        if (t <= 0.0) {
            if (term.mu < 0.0) throw DomainError("singular source evaluated at t <= 0");
            out.push_back(t < 0.0 ? 0.0 : (term.mu == 0.0 ? term.weight : 0.0));
            continue;
        }
        out.push_back(normalized_power(term.weight, t, term.mu));
    }
    return out;
}

std::vector<double> eval_F(const SourceSpec& src, double t) {
    std::vector<double> out;
    out.reserve(src.terms.size());
    for (const auto& term : src.terms) out.push_back(normalized_power(term.weight, t, term.mu + 1.0));
    return out;
}

std::vector<double> eval_Ftilde(const SourceSpec& src, double t) {
    std::vector<double> out;
    out.reserve(src.terms.size());
    for (const auto& term : src.terms) out.push_back(normalized_power(term.weight, t, term.mu + 2.0));
    return out;
}

std::vector<double> bdf2_diff_Ftilde(const SourceSpec& src, int n, double tau) {
    std::vector<double> out;
    out.reserve(src.terms.size());
    for (const auto& term : src.terms) out.push_back(term.weight * bdf2_power(n, tau, term.mu + 2.0));
    return out;
}

double bdf2_diff_correction(double alpha, int n, double tau) { return bdf2_power(n, tau, 2.0 - alpha); }

double correction_factor(double alpha, double t, int order) {
    if (order != 1 && order != 2) throw DomainError("correction order must be 1 or 2");
    if (t <= 0.0) return 0.0;
    const double p = static_cast<double>(order) - alpha;
    return std::pow(t, p) * rgamma(p + 1.0);
}

std::vector<double> correction_terms(double alpha, std::span<const double> u0, double t, int order) {
    const double c = correction_factor(alpha, t, order);
    std::vector<double> out(u0.begin(), u0.end());
    for (double& x : out) x *= c;
    return out;
}

SourceSpec fode_power_source(double alpha, double nu, double lambda) {
    double mu = nu - alpha;
    if (mu < -1.0 - kDiracSnap) {
        throw DomainError("exponent nu must satisfy nu >= alpha - 1, got nu=" + std::to_string(nu));
    }
    if (std::abs(mu + 1.0) <= kDiracSnap) mu = -1.0;
    const double g = gamma_fn(nu + 1.0);
    SourceSpec src;
    // Gamma(nu+1)/Gamma(mu+1) t^mu is the normalized power with weight Gamma(nu+1)
    src.terms.push_back({g, mu, SpatialProfile::constant(1.0)});
    if (lambda != 0.0) src.terms.push_back({-lambda * g, nu, SpatialProfile::constant(1.0)});
    return src;
}

}  // namespace fracsub
