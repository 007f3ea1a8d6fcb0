#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rkb {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Failure of a numerical procedure (non-finite values, failed eigen-solve, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cholesky breakdown: the Gram matrix is not numerically positive definite.
/// `pivot()` is the zero-based index of the first failing pivot.
class NotPositiveDefinite : public NumericalError {
public:
    NotPositiveDefinite(std::size_t pivot, double value)
        : NumericalError("Gram matrix is not positive definite: pivot " +
                         std::to_string(pivot) + " = " + std::to_string(value)),
          pivot_(pivot), value_(value) {}

    std::size_t pivot() const noexcept { return pivot_; }
    double value() const noexcept { return value_; }

private:
    std::size_t pivot_;
    double value_;
};

/// Invalid user input (CLI flags, config files, problem parameters).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace rkb
