#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracinv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (order outside (0,1), Mittag-Leffler argument out of range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Observation point does not coincide with a grid node.
class PlacementError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Numerical failure while time-marching; carries the offending step.
class SolverError : public Error {
public:
    SolverError(const std::string& what, std::size_t step)
        : Error(what + " (time step " + std::to_string(step) + ")"), step_(step) {}

    [[nodiscard]] std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Non-finite values appeared in the solution.
class BlowUpError : public SolverError {
public:
    using SolverError::SolverError;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace fracinv
