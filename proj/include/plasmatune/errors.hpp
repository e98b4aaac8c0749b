#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plasmatune {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// ABCD to S conversion hit a zero denominator.
class DegenerateNetworkError : public Error {
public:
    using Error::Error;
};

/// S to ABCD conversion is undefined because the ports are isolated (s21 = 0).
class NonInvertibleError : public Error {
public:
    using Error::Error;
};

/// 1 - s22 * gamma_load vanished.
class ResonantTerminationError : public Error {
public:
    using Error::Error;
};

/// Power gain is undefined for |s11| >= 1.
class TotalReflectionError : public Error {
public:
    using Error::Error;
};

/// Switch-state word width does not match the stub count.
class StateWidthError : public Error {
public:
    using Error::Error;
};

/// Transient time step violates dt <= tau_min / 10.
class StepSizeError : public Error {
public:
    using Error::Error;
};

/// A value or object violates a documented invariant.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Least-squares fit of a switch model did not converge.
class FitFailure : public Error {
public:
    FitFailure(const std::string& what, double residual_norm)
        : Error(what), residual_norm_(residual_norm) {}

    double residual_norm() const noexcept { return residual_norm_; }

private:
    double residual_norm_;
};

/// Malformed input file; carries the 1-based line number (0 when not tied to a line).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Configuration document is missing fields, has bad units or dangling references.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace plasmatune
