#include "fracsub/cq_weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "fracsub/error.hpp"
#include "fracsub/summation.hpp"

namespace fracsub {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("fractional order must lie in (0,1), got " + std::to_string(alpha));
    }
}

CqKernel::CqKernel(CqScheme scheme, double alpha, std::vector<double> weights)
    : scheme_(scheme), alpha_(alpha), weights_(std::move(weights)) {}

std::complex<double> CqKernel::symbol(std::complex<double> xi) const {
    const std::complex<double> one_minus = 1.0 - xi;
    if (scheme_ == CqScheme::GL) return std::pow(one_minus, alpha_);
    // (1 - xi)(3 - xi)/2, each factor with Re > 0 inside the closed disk
    return std::pow(one_minus, alpha_) * std::pow((3.0 - xi) / 2.0, alpha_);
}

namespace {

// Coefficients of (1 - xi/ratio)^alpha, j = first..last, appended to c.
void extend_binomial(std::vector<double>& c, double alpha, double ratio, std::size_t n) {
    if (c.empty()) c.push_back(1.0);
    for (std::size_t j = c.size(); j <= n; ++j) {
        const double jd = static_cast<double>(j);
        c.push_back(c[j - 1] * (jd - 1.0 - alpha) / (ratio * jd));
    }
}

double convolve_at(const std::vector<double>& a, const std::vector<double>& b, std::size_t n) {
    // b decays like 3^-j and underflows to zero after a few hundred terms
    CompensatedSum s;
    for (std::size_t j = 0; j <= n; ++j) {
        if (b[j] == 0.0) break;
        s.add(a[n - j] * b[j]);
    }
    return s.value();
}

}  // namespace

CqKernel gl_weights(FractionalOrder alpha, std::size_t n) {
    std::vector<double> w;
    w.reserve(n + 1);
    extend_binomial(w, alpha, 1.0, n);
    return {CqScheme::GL, alpha, std::move(w)};
}

CqKernel fbdf2_weights(FractionalOrder alpha, std::size_t n) {
    std::vector<double> a;
    std::vector<double> b;
    extend_binomial(a, alpha, 1.0, n);
    extend_binomial(b, alpha, 3.0, n);
    const double scale = std::pow(1.5, alpha.value());
    std::vector<double> w(n + 1);
    for (std::size_t k = 0; k <= n; ++k) w[k] = scale * convolve_at(a, b, k);
    return {CqScheme::FBDF2, alpha, std::move(w)};
}

CqKernel make_kernel(CqScheme scheme, FractionalOrder alpha, std::size_t n) {
    return scheme == CqScheme::GL ? gl_weights(alpha, n) : fbdf2_weights(alpha, n);
}

std::vector<double> apply_cq(const CqKernel& kernel, double tau,
                             std::span<const std::vector<double>> history) {
    if (history.empty()) return {};
    const std::size_t n = history.size() - 1;
    if (kernel.size() < n + 1) throw DimensionMismatch("kernel shorter than history");
    const std::size_t dim = history.front().size();
    std::vector<double> out(dim, 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
        const auto& v = history[n - j];
        if (v.size() != dim) throw DimensionMismatch("ragged history in apply_cq");
        const double w = kernel[j];
        for (std::size_t i = 0; i < dim; ++i) out[i] += w * v[i];
    }
    const double scale = std::pow(tau, -kernel.alpha());
    for (double& x : out) x *= scale;
    return out;
}

double apply_cq(const CqKernel& kernel, double tau, std::span<const double> history) {
    if (history.empty()) return 0.0;
    const std::size_t n = history.size() - 1;
    if (kernel.size() < n + 1) throw DimensionMismatch("kernel shorter than history");
    double s = 0.0;
    for (std::size_t j = 0; j <= n; ++j) s += kernel[j] * history[n - j];
    return std::pow(tau, -kernel.alpha()) * s;
}

CqKernel WeightCache::get(CqScheme scheme, FractionalOrder alpha, std::size_t n) {
    Entry& e = entries_[{static_cast<int>(scheme), alpha.value()}];
    if (e.weights.size() < n + 1) extend(e, scheme, alpha, n);
    return {scheme, alpha, std::vector<double>(e.weights.begin(), e.weights.begin() + static_cast<std::ptrdiff_t>(n + 1))};
}

std::size_t WeightCache::stored_length(CqScheme scheme, double alpha) const {
    const auto it = entries_.find({static_cast<int>(scheme), alpha});
    return it == entries_.end() ? 0 : it->second.weights.size();
}

void WeightCache::extend(Entry& e, CqScheme scheme, double alpha, std::size_t n) {
    extend_binomial(e.gl, alpha, 1.0, n);
    if (scheme == CqScheme::GL) {
        e.weights = e.gl;
        return;
    }
    extend_binomial(e.third, alpha, 3.0, n);
    const double scale = std::pow(1.5, alpha);
    for (std::size_t k = e.weights.size(); k <= n; ++k) {
        e.weights.push_back(scale * convolve_at(e.gl, e.third, k));
    }
}

std::complex<double> one_minus_exp_neg(std::complex<double> z) {
    const double x = z.real();
    const double y = z.imag();
    const double s = std::sin(0.5 * y);
    const double re = -std::expm1(-x) * std::cos(y) + 2.0 * s * s;
    const double im = std::exp(-x) * std::sin(y);
    return {re, im};
}

namespace {

std::complex<double> bdf2_of_exp(std::complex<double> z) {
    // 3/2 - 2 e^-z + e^-2z / 2 = e1 + e1^2/2 with e1 = 1 - e^-z
    const std::complex<double> e1 = one_minus_exp_neg(z);
    return e1 * (1.0 + 0.5 * e1);
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

SectorLemmaReport check_sector_lemmas(FractionalOrder alpha, std::size_t sample_count,
                                      double beta, std::uint64_t seed) {
    if (sample_count == 0) throw DomainError("sample_count must be positive");
    const double a = alpha.value();
    const double pi = std::numbers::pi;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    SectorLemmaReport rep;
    rep.samples = sample_count;
    rep.gl_arg_excess_right = -std::numeric_limits<double>::infinity();
    rep.bdf2_arg_excess_right = -std::numeric_limits<double>::infinity();
    rep.gl_arg_excess_left = -std::numeric_limits<double>::infinity();

    for (std::size_t s = 0; s < sample_count; ++s) {
        // right half-plane: Re z in (0, 3], Im z over several periods
        const double x = 3.0 * (1.0 - unit(rng));
        const double y = 4.0 * pi * (2.0 * unit(rng) - 1.0);
        const std::complex<double> z(x, y);
        rep.gl_arg_excess_right =
            std::max(rep.gl_arg_excess_right, a * std::abs(std::arg(one_minus_exp_neg(z))) - a * pi / 2);
        rep.bdf2_arg_excess_right =
            std::max(rep.bdf2_arg_excess_right, a * std::abs(std::arg(bdf2_of_exp(z))) - a * pi / 2);

        // left strip: Re z <= 0, |Im z| <= pi, |arg z| in (pi/2, pi)
        const double yl = pi * (2.0 * unit(rng) - 1.0);
        const double xl = -3.0 * unit(rng);
        const std::complex<double> zl(xl, yl);
        if (yl != 0.0) {
            rep.gl_arg_excess_left = std::max(
                rep.gl_arg_excess_left,
                a * std::abs(std::arg(one_minus_exp_neg(zl))) - a * std::abs(std::arg(zl)));
        }
    }

    // small-|z| order along random rays, kept away from the branch cut
    constexpr int kRadii = 21;
    const std::size_t rays = std::max<std::size_t>(1, std::min<std::size_t>(sample_count, 64));
    rep.gl_slope_min = rep.bdf2_slope_min = std::numeric_limits<double>::infinity();
    rep.gl_slope_max = rep.bdf2_slope_max = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < rays; ++r) {
        const double phi = 0.75 * pi * (2.0 * unit(rng) - 1.0);
        std::vector<double> lx, lg, lb;
        for (int i = 0; i < kRadii; ++i) {
            const double rho = std::pow(10.0, -4.0 + 2.0 * i / (kRadii - 1));
            const std::complex<double> z = std::polar(rho, phi);
            const std::complex<double> zb = std::pow(z, beta);
            lx.push_back(std::log(rho));
            lg.push_back(std::log(std::abs(zb - std::pow(one_minus_exp_neg(z), beta))));
            lb.push_back(std::log(std::abs(zb - std::pow(bdf2_of_exp(z), beta))));
        }
        const double sg = lsq_slope(lx, lg);
        const double sb = lsq_slope(lx, lb);
        rep.gl_slope_min = std::min(rep.gl_slope_min, sg);
        rep.gl_slope_max = std::max(rep.gl_slope_max, sg);
        rep.bdf2_slope_min = std::min(rep.bdf2_slope_min, sb);
        rep.bdf2_slope_max = std::max(rep.bdf2_slope_max, sb);
    }
    return rep;
}

}  // namespace fracsub
