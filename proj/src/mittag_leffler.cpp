#include "fracsub/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracsub/double_double.hpp"
#include "fracsub/error.hpp"
#include "fracsub/gamma.hpp"
#include "fracsub/summation.hpp"

namespace fracsub {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDdEps = 1.23e-32;  // 2^-106
constexpr int kMaxTerms = 20000;

// Windows in r = |x|^(1/alpha), the scale of the dominant series term
// exp(r). Below kAsymptoticFrom the optimally truncated expansion cannot
// reach the tolerance; above kExtendedUpTo double-double cancellation can't.
constexpr double kAsymptoticFrom = 28.0;
constexpr double kExtendedUpTo = 45.0;

void validate(const MlQuery& q) {
    if (!(q.alpha > 0.0 && q.alpha <= 1.0) || !(q.beta > 0.0 && q.beta <= 4.0) || !std::isfinite(q.x)) {
        std::ostringstream os;
        os << "Mittag-Leffler parameters out of range: alpha=" << q.alpha << " beta=" << q.beta
           << " x=" << q.x;
        throw DomainError(os.str());
    }
}

std::string describe(const MlQuery& q, double err) {
    std::ostringstream os;
    os.precision(17);
    os << "E_{" << q.alpha << "," << q.beta << "}(" << q.x << "): error estimate " << err
       << " exceeds " << kMlTolerance;
    return os.str();
}

}  // namespace

MlResult ml_series(const MlQuery& q) {
    CompensatedSum sum;
    double abs_sum = 0.0;
    double pw = 1.0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double z = q.alpha * k + q.beta;
        const double term = pw * rgamma(z);
        sum.add(term);
        abs_sum += std::abs(term);
        // Gamma is increasing beyond 1.47, so once |x| <= Gamma(z+alpha)/Gamma(z)
        // every later term is smaller than this one
        if (std::abs(term) <= 1e-17 && z > 2.0 && k > 0 && std::abs(q.x) <= 1.0) break;
        if (std::abs(term) <= 1e-17 * std::abs(sum.value()) && z > 2.0 && k > 0 &&
            std::abs(q.x) * rgamma(z + q.alpha) / rgamma(z) < 0.5) {
            break;
        }
        pw *= q.x;
        if (pw == 0.0) break;
    }
    return {sum.value(), 4.0 * kEps * abs_sum + 1e-17, MlRegime::Series};
}

MlResult ml_series_extended(const MlQuery& q) {
    if (q.x == 0.0) return {rgamma(q.beta), 0.0, MlRegime::ExtendedSeries};
    const DoubleDouble lx = log(DoubleDouble(std::abs(q.x)));
    const double log_floor = std::log(1e-20);

    DoubleDouble sum = 0.0;
    double abs_sum = 0.0;
    double abs_err = 0.0;
    double prev_exponent = std::numeric_limits<double>::infinity();
    double last = 0.0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const DoubleDouble z = fma_dd(q.alpha, static_cast<double>(k), q.beta);
        const DoubleDouble lg = lgamma_dd(z);
        const DoubleDouble klx = lx * static_cast<double>(k);
        const DoubleDouble e = klx - lg;
        DoubleDouble mag = exp(e);
        if (q.x < 0.0 && (k % 2 == 1)) mag = -mag;
        sum += mag;
        const double m = std::abs(mag.hi);
        abs_sum += m;
        // each term carries the rounding of its exponent, weighted by its own size
        abs_err += m * kDdEps * (4.0 + std::abs(klx.hi) + std::abs(lg.hi));
        last = m;
        const bool decreasing = e.hi < prev_exponent;
        prev_exponent = e.hi;
        if (e.hi < log_floor && z.hi > 2.0 && decreasing && k > 0) break;
    }
    const double err = abs_err + kDdEps * abs_sum + 2.0 * last + kEps * std::abs(sum.hi);
    return {static_cast<double>(sum), err, MlRegime::ExtendedSeries};
}

namespace {

// alpha = 1: envelope of the terms, with the smallest term times the scale r
// covering the exponentially small remainder.
MlResult asymptotic_unit_order(const MlQuery& q) {
    const double ax = -q.x;
    const double log_ax = std::log(ax);
    const double log_pi = std::log(std::numbers::pi);
    auto log_envelope = [&](int k) {
        const double y = q.beta - q.alpha * k;
        if (y >= 0.0) return -k * log_ax + 0.123;
        return -k * log_ax + std::lgamma(1.0 - y) - log_pi;
    };
    CompensatedSum sum;
    double yk = 1.0;
    double err = std::numeric_limits<double>::infinity();
    double prev_env = std::numeric_limits<double>::infinity();
    for (int k = 1; k < kMaxTerms; ++k) {
        const double env = log_envelope(k);
        if (env > prev_env && env > std::log(1e-20)) {
            err = std::exp(env) * ax * std::max(1.0, std::pow(ax, 1.0 - q.beta));
            break;
        }
        prev_env = env;
        yk /= q.x;
        sum.add(-yk * rgamma(q.beta - k));
        if (env < std::log(1e-20)) {
            err = std::exp(env) + 1e-20;
            break;
        }
    }
    return {sum.value(), err + kEps * std::abs(sum.value()), MlRegime::Asymptotic};
}

}  // namespace

MlResult ml_asymptotic(const MlQuery& q) {
    if (!(q.x < 0.0)) throw DomainError("asymptotic Mittag-Leffler expansion needs x < 0");
    if (q.alpha == 1.0) return asymptotic_unit_order(q);
    const double ax = -q.x;
    const double log_ax = std::log(ax);

    // For beta < 1 + alpha the integral representation over (0, inf) with
    // kernel Im[e^{i pi (1-beta)} / (rho/ax + e^{-i pi alpha})] / ax gives, after
    // K terms of the geometric expansion,
    //   |R_K| <= Gamma(alpha (K+1) + 1 - beta) ax^{-(K+1)} / (pi m),
    // m = min over u >= 0 of |u + e^{-i pi alpha}|. The recurrence in beta
    // extends the bound to larger beta once K >= shifts.
    const double m = q.alpha <= 0.5 ? 1.0 : std::sin(std::numbers::pi * q.alpha);
    const double log_scale = std::log(std::numbers::pi * m);
    int shifts = 0;
    while (q.beta - shifts * q.alpha >= 1.0 + q.alpha) ++shifts;
    auto log_bound = [&](int K) {
        return std::lgamma(q.alpha * (K + 1) + 1.0 - q.beta) - (K + 1) * log_ax - log_scale;
    };

    CompensatedSum sum;
    double abs_sum = 0.0;
    double yk = 1.0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k < kMaxTerms; ++k) {
        yk /= q.x;
        const double term = -yk * rgamma(q.beta - q.alpha * k);
        if (k >= shifts) {
            const double lb = log_bound(k);
            // stop before the bound grows again: optimal truncation
            if (lb > std::log(best) && std::isfinite(best)) break;
            sum.add(term);
            abs_sum += std::abs(term);
            best = std::exp(lb);
            if (lb < std::log(1e-20)) break;
        } else {
            sum.add(term);
            abs_sum += std::abs(term);
        }
    }
    return {sum.value(), best + 2.0 * kEps * abs_sum, MlRegime::Asymptotic};
}

MlResult ml_evaluate(const MlQuery& q) {
    validate(q);
    if (q.x == 0.0) return {rgamma(q.beta), 0.0, MlRegime::Series};
    if (std::abs(q.x) <= 1.0) return ml_series(q);

    const double r = std::pow(std::abs(q.x), 1.0 / q.alpha);
    if (q.x > 0.0) {
        if (r > 600.0) throw DomainError("Mittag-Leffler argument overflows: x=" + std::to_string(q.x));
        MlResult res = ml_series_extended(q);
        if (res.error_estimate > kMlTolerance * std::max(1.0, std::abs(res.value))) {
            throw AccuracyNotAchieved(describe(q, res.error_estimate));
        }
        return res;
    }

    double best = std::numeric_limits<double>::infinity();
    if (r >= kAsymptoticFrom) {
        MlResult res = ml_asymptotic(q);
        if (res.error_estimate <= kMlTolerance) return res;
        best = res.error_estimate;
    }
    if (r <= kExtendedUpTo) {
        MlResult res = ml_series_extended(q);
        if (res.error_estimate <= kMlTolerance) return res;
        best = std::min(best, res.error_estimate);
    }
    throw AccuracyNotAchieved(describe(q, best));
}

double ml_eval(const MlQuery& q) { return ml_evaluate(q).value; }

double ml_conv_weight(double alpha, double lambda, double t, double mu, double beta) {
    if (!(t > 0.0)) throw DomainError("convolution weight needs t > 0");
    if (!(mu > -1.0)) throw DomainError("convolution weight needs mu > -1");
    if (!(lambda >= 0.0)) throw DomainError("convolution weight needs lambda >= 0");
    const double x = -lambda * std::pow(t, alpha);
    return gamma_fn(mu + 1.0) * std::pow(t, beta + mu) * ml_eval(alpha, beta + mu + 1.0, x);
}

double ml_conv_weight_normalized(double alpha, double lambda, double t, double mu) {
    if (!(t > 0.0)) throw DomainError("convolution weight needs t > 0");
    if (!(mu >= -1.0)) throw DomainError("normalized convolution weight needs mu >= -1");
    if (!(lambda >= 0.0)) throw DomainError("convolution weight needs lambda >= 0");
    const double x = -lambda * std::pow(t, alpha);
    return std::pow(t, alpha + mu) * ml_eval(alpha, alpha + mu + 1.0, x);
}

}  // namespace fracsub
