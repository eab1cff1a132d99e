#pragma once

#include <stdexcept>
#include <string>

namespace featherwing {

/// Base of all library errors. The CLI maps the concrete kinds onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (e.g. z outside [0, l]).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid parameter combination (panel count, dimension mismatch, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Non-finite sample, failed eigen iteration, and similar numeric failures.
class NumericError : public Error {
public:
    using Error::Error;
};

/// The physical model cannot be assembled (e.g. singular mass matrix).
class ModelError : public Error {
public:
    using Error::Error;
};

/// Bisection bracket without a sign change.
class BracketError : public Error {
public:
    using Error::Error;
};

/// Integration produced a non-finite state.
class DivergenceError : public NumericError {
public:
    DivergenceError(const std::string& what, double t, double state_norm)
        : NumericError(what), t_(t), state_norm_(state_norm) {}

    double time() const noexcept { return t_; }
    double state_norm() const noexcept { return state_norm_; }

private:
    double t_;
    double state_norm_;
};

/// Parse or validation failure in an experiment config.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// File system failure while writing or reading artifacts.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace featherwing
