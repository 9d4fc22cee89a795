#include "fracsub/double_double.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace fracsub {

namespace {

constexpr DoubleDouble kLn2{6.931471805599452862e-01, 2.319046813846299558e-17};
constexpr DoubleDouble kTwoPi{6.283185307179586232e+00, 2.449293598294706414e-16};

// Bernoulli numbers B_2 .. B_30 as exact rationals (numerator, denominator).
constexpr std::array<std::array<double, 2>, 15> kBernoulli{{
    {1.0, 6.0},
    {-1.0, 30.0},
    {1.0, 42.0},
    {-1.0, 30.0},
    {5.0, 66.0},
    {-691.0, 2730.0},
    {7.0, 6.0},
    {-3617.0, 510.0},
    {43867.0, 798.0},
    {-174611.0, 330.0},
    {854513.0, 138.0},
    {-236364091.0, 2730.0},
    {8553103.0, 6.0},
    {-23749461029.0, 870.0},
    {8615841276005.0, 14322.0},
}};

constexpr double kStirlingThreshold = 30.0;

DoubleDouble mul_pow2(const DoubleDouble& a, int e) {
    return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)};
}

DoubleDouble lgamma_stirling(const DoubleDouble& z) {
    const DoubleDouble lz = log(z);
    DoubleDouble s = (z - 0.5) * lz - z + mul_pow2(log(kTwoPi), -1);
    const DoubleDouble zinv = DoubleDouble(1.0) / z;
    const DoubleDouble zinv2 = zinv * zinv;
    DoubleDouble zpow = zinv;
    for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
        const double two_k = 2.0 * static_cast<double>(k);
        const DoubleDouble coeff = DoubleDouble(kBernoulli[k - 1][0]) /
                                   (DoubleDouble(kBernoulli[k - 1][1]) * (two_k * (two_k - 1.0)));
        const DoubleDouble term = coeff * zpow;
        s += term;
        if (std::abs(term.hi) < 1e-34 * std::abs(s.hi)) break;
        zpow *= zinv2;
    }
    return s;
}

}  // namespace

DoubleDouble exp(const DoubleDouble& a) {
    if (a.hi > 709.0) return {std::numeric_limits<double>::infinity(), 0.0};
    if (a.hi < -745.0) return {0.0, 0.0};
    if (a.hi == 0.0 && a.lo == 0.0) return {1.0, 0.0};

    // exp(a) = 2^k exp(r), r reduced further by 2^-10 then squared back
    const double k = std::nearbyint(a.hi / kLn2.hi);
    const DoubleDouble r = mul_pow2(a - kLn2 * k, -10);

    // expm1(r) by Taylor series; |r| < 4e-4 so 10 terms exceed the precision
    DoubleDouble term = r;
    DoubleDouble s = r;
    for (int i = 2; i <= 12; ++i) {
        term = term * r / DoubleDouble(static_cast<double>(i));
        s += term;
        if (std::abs(term.hi) < 1e-36) break;
    }
    // expm1(2x) = 2 expm1(x) + expm1(x)^2
    for (int i = 0; i < 10; ++i) s = mul_pow2(s, 1) + s * s;
    s = s + 1.0;
    return mul_pow2(s, static_cast<int>(k));
}

DoubleDouble log(const DoubleDouble& a) {
    if (a.hi <= 0.0) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    // One Newton step on exp(x) = a doubles the precision of std::log.
    const DoubleDouble x = std::log(a.hi);
    return x + a * exp(-x) - 1.0;
}

DoubleDouble lgamma_dd(const DoubleDouble& z) {
    if (z.hi <= 0.0) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    if (z.hi >= kStirlingThreshold) return lgamma_stirling(z);

    // Gamma(z) = Gamma(z + n) / (z (z+1) ... (z+n-1))
    DoubleDouble shifted = z;
    DoubleDouble prod = 1.0;
    while (shifted.hi < kStirlingThreshold) {
        prod *= shifted;
        shifted = shifted + 1.0;
    }
    return lgamma_stirling(shifted) - log(prod);
}

}  // namespace fracsub
