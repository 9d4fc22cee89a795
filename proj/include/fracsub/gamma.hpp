#pragma once

namespace fracsub {

/// sin(pi x) with exact zeros at integers and argument reduction done in
/// the exact domain (x mod 2), so large |x| keeps full relative accuracy.
double sin_pi(double x);

/// Gamma(x); thin wrapper over std::tgamma kept for a single point of change.
double gamma_fn(double x);

/// 1/Gamma(x), an entire function: exactly 0 at x = 0, -1, -2, ... and
/// finite (possibly underflowing) everywhere else.
double rgamma(double x);

/// Gamma(a) / Gamma(b) evaluated via log-Gamma when the individual values
/// would overflow; b at a pole gives 0.
double gamma_ratio(double a, double b);

}  // namespace fracsub
