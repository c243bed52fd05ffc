#pragma once

#include <stdexcept>
#include <string>

namespace exprk {

/// Thrown when a matrix-exponential kernel produces Inf/NaN, typically while
/// squaring an overflowing intermediate. `stage()` is the 1-based pass that
/// first went non-finite.
class NonFiniteError : public std::runtime_error {
public:
    NonFiniteError(const std::string& message, int stage)
        : std::runtime_error(message), stage_(stage) {}

    int stage() const { return stage_; }

private:
    int stage_;
};

/// Thrown when an implicit stage cannot be solved (singular stage matrix).
/// Carries a cheap pivot-ratio condition estimate from the factorization so
/// callers can report how degenerate the system was.
class StepFailure : public std::runtime_error {
public:
    StepFailure(const std::string& message, double condition_estimate)
        : std::runtime_error(message), condition_estimate_(condition_estimate) {}

    double condition_estimate() const { return condition_estimate_; }

private:
    double condition_estimate_;
};

}  // namespace exprk
