#pragma once

#include <stdexcept>
#include <string>

namespace wiretap {

/// Operand shapes do not conform (caller bug).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid parameter combination (code dimensions, seeds, LPN params).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoSolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The wiretap channel is not degraded with respect to the main channel.
class DegradationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Request exceeds an enumeration budget.
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature failed to reach its tolerance; the best estimate is kept.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// Malformed text artifact (hex matrices, key or ciphertext files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wiretap
