#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsoturb {

/// Invalid physical or configuration parameters (r0 <= 0, L0 <= l0, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Quadrature or iteration failed to converge.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Grid discretization error estimate exceeded the requested tolerance.
class AccuracyError : public NumericError {
public:
    AccuracyError(const std::string& what, double estimate)
        : NumericError(what), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

/// Malformed or out-of-range measurement data.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what, std::size_t offending = 0)
        : std::runtime_error(what), offending_(offending) {}
    std::size_t offending_count() const noexcept { return offending_; }

private:
    std::size_t offending_;
};

/// Data carries no information about turbulence (e.g. every sample is 1).
class DegenerateDataError : public DataError {
public:
    using DataError::DataError;
};

}  // namespace fsoturb
