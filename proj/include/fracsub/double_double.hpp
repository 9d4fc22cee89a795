#pragma once

#include <cmath>

namespace fracsub {

/// Unevaluated sum hi + lo of two doubles with |lo| <= ulp(hi)/2, giving
/// roughly 32 significant decimal digits.
///
/// Error-free transformations follow Dekker and Knuth; the division and
/// transcendental routines follow the usual QD-library recipes. Only the
/// operations the Mittag-Leffler band evaluation needs are provided.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}  // NOLINT(implicit)
    constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

    explicit constexpr operator double() const { return hi + lo; }
};

namespace dd_detail {

inline DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi, -a.lo}; }

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
    DoubleDouble s = dd_detail::two_sum(a.hi, b.hi);
    const DoubleDouble t = dd_detail::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = dd_detail::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator+(const DoubleDouble& a, double b) {
    DoubleDouble s = dd_detail::two_sum(a.hi, b);
    s.lo += a.lo;
    return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }
inline DoubleDouble operator-(const DoubleDouble& a, double b) { return a + (-b); }

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
    DoubleDouble p = dd_detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator*(const DoubleDouble& a, double b) {
    DoubleDouble p = dd_detail::two_prod(a.hi, b);
    p.lo += a.lo * b;
    return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
    const double q1 = a.hi / b.hi;
    DoubleDouble r = a - b * q1;
    const double q2 = r.hi / b.hi;
    r = r - b * q2;
    const double q3 = r.hi / b.hi;
    return dd_detail::quick_two_sum(q1, q2) + q3;
}

inline DoubleDouble& operator+=(DoubleDouble& a, const DoubleDouble& b) { return a = a + b; }
inline DoubleDouble& operator*=(DoubleDouble& a, const DoubleDouble& b) { return a = a * b; }

inline DoubleDouble abs(const DoubleDouble& a) { return a.hi < 0.0 ? -a : a; }

/// Exact a*k + b for doubles a, b and an integer k that fits in a double.
inline DoubleDouble fma_dd(double a, double k, double b) {
    return DoubleDouble(dd_detail::two_prod(a, k)) + b;
}

DoubleDouble exp(const DoubleDouble& a);
DoubleDouble log(const DoubleDouble& a);

/// log Gamma(z) for z > 0 to ~1e-31 absolute accuracy (Stirling series with
/// upward shift of the argument).
DoubleDouble lgamma_dd(const DoubleDouble& z);

}  // namespace fracsub
