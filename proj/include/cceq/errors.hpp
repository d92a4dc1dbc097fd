#pragma once

#include <stdexcept>
#include <string>

namespace cceq {

// Primitive bounds violated; the message names the offending field.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The best-response scan saw a sign pattern impossible for a payoff gap
// that is increasing in the signal. Usually indicates broken primitives.
class NonMonotoneError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fixed-point iteration exhausted its budget.
class NoConvergenceError : public std::runtime_error {
public:
    NoConvergenceError(const std::string& msg, double residual, double last, double prev)
        : std::runtime_error(msg), residual(residual), last_iterate(last), prev_iterate(prev) {}
    double residual;
    double last_iterate;
    double prev_iterate;
};

// Iterates alternate between two values beyond tolerance; both are reported.
class CycleDetectedError : public std::runtime_error {
public:
    CycleDetectedError(const std::string& msg, double a, double b)
        : std::runtime_error(msg), value_a(a), value_b(b) {}
    double value_a;
    double value_b;
};

// Implicit-function denominator vanished at the cutoff.
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A perturbed re-solve left the interior (sentinel cutoff).
class BoundaryHitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Calibration target not implementable, or the verification re-solve missed.
class CalibrationError : public std::runtime_error {
public:
    enum class Reason { TargetBelowFloor, TargetAtUnity, RoundtripFailure };
    CalibrationError(Reason reason, const std::string& msg)
        : std::runtime_error(msg), reason(reason) {}
    Reason reason;
};

// Malformed run configuration; the message names the field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cceq
