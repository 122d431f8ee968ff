#pragma once
#include <stdexcept>
#include <string>

namespace strainwave {

// Base for everything thrown on purpose by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user-supplied values: parameters, config files, CLI input.
struct ParamError : Error {
    using Error::Error;
};

// A documented precondition was violated by the caller.
struct ContractError : Error {
    using Error::Error;
};

// Iterative numerics failed: root finder ran out of iterations, etc.
struct NumericalError : Error {
    using Error::Error;
};

// A simulated field picked up NaN or Inf.
struct DivergenceError : NumericalError {
    DivergenceError(const std::string& what, std::size_t step_)
        : NumericalError(what), step(step_) {}
    std::size_t step;
};

// A runtime invariant (positivity, monotonicity, ...) broke beyond tolerance.
struct IntegrityError : NumericalError {
    IntegrityError(const std::string& what, std::size_t step_)
        : NumericalError(what), step(step_) {}
    std::size_t step;
};

// A front reached the sentinel band next to the boundary.
struct DomainTooSmallError : NumericalError {
    DomainTooSmallError(const std::string& what, int strain_, double t_, double x_)
        : NumericalError(what), strain(strain_), t(t_), x(x_) {}
    int strain;   // 1-based strain id
    double t;
    double x;
};

// Not enough usable measurement points.
struct InsufficientDataError : Error {
    using Error::Error;
};

} // namespace strainwave
