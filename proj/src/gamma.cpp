#include "fracsub/gamma.hpp"

#include <cmath>
#include <numbers>

namespace fracsub {

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double sign_of_gamma(double x) {
    if (x > 0.0) return 1.0;
    // On (-k-1, -k) Gamma has sign (-1)^(k+1)
    const double k = std::floor(-x);
    return std::fmod(k, 2.0) == 0.0 ? -1.0 : 1.0;
}

}  // namespace

double sin_pi(double x) {
    if (x == std::floor(x)) return 0.0;
    double r = std::fmod(x, 2.0);  // exact
    if (r <= -1.0) r += 2.0;
    if (r > 1.0) r -= 2.0;
    // r in (-1, 1]; fold onto [-1/2, 1/2]
    if (r > 0.5) r = 1.0 - r;
    if (r < -0.5) r = -1.0 - r;
    return std::sin(std::numbers::pi * r);
}

double gamma_fn(double x) { return std::tgamma(x); }

double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > 0.0 && x < 170.0) return 1.0 / std::tgamma(x);
    if (x >= 170.0) return std::exp(-std::lgamma(x));
    // 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
    const double s = sin_pi(x);
    const double lg = std::lgamma(1.0 - x) + std::log(std::abs(s)) - std::log(std::numbers::pi);
    return std::copysign(std::exp(lg), s);
}

double gamma_ratio(double a, double b) {
    if (is_nonpositive_integer(b)) return 0.0;
    const double ga = std::tgamma(a);
    const double gb = std::tgamma(b);
    if (std::isfinite(ga) && std::isfinite(gb) && gb != 0.0) return ga / gb;
    const double lg = std::lgamma(a) - std::lgamma(b);
    return sign_of_gamma(a) * sign_of_gamma(b) * std::exp(lg);
}

}  // namespace fracsub
