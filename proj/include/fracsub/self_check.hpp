#pragma once

#include <string>
#include <vector>

namespace fracsub {

/// Outcome of one invariant check: the worst deviation found and its bound.
struct CheckResult {
    std::string name;
    double deviation = 0.0;
    double bound = 0.0;
    bool passed = false;
};

/// Invariants of every module that need no published data: weights against
/// symbol sampling, eigen-residuals, modal and nodal stepping, closed-form
/// Mittag-Leffler cases, symbol slopes, regularity exponents, degenerate
/// runs, single steps, rate scale invariance and the CSV round trip.
std::vector<CheckResult> run_self_checks();

}  // namespace fracsub
