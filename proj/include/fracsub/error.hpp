#pragma once

#include <stdexcept>
#include <string>

namespace fracsub {

/// Parameter outside the mathematically admissible range (alpha outside (0,1),
/// mu <= -1, negative time, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed user configuration: unknown profile strings, bad CLI values,
/// non-nested mesh chains.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not deliver a result (singular solve,
/// non-finite value, evaluation of a singular profile at a node).
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No evaluation regime could certify the requested accuracy.
class AccuracyNotAchieved : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

/// Vector arguments of incompatible length.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace fracsub
