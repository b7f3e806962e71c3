#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace surfcap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A required parameter is non-finite, non-positive or otherwise outside
/// its admissible set.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The equilibrium has no root with non-negative band bending; the
/// configuration is in accumulation or under inverted bias.
class DepletionViolation : public Error {
public:
    using Error::Error;
};

/// The bulk space-charge capacitance diverges at flat band (V1 -> 0).
class FlatBandSingularity : public Error {
public:
    using Error::Error;
};

/// Bracketed root search hit its iteration cap.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double lo, double hi)
        : Error(what), lo_(lo), hi_(hi) {}

    double bracket_lo() const noexcept { return lo_; }
    double bracket_hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

/// Stage position lies beyond the electrical contact point.
class ThroughContact : public DomainError {
public:
    using DomainError::DomainError;
};

/// Sphere-plate separation is not small against the radius.
class PfaInvalid : public DomainError {
public:
    using DomainError::DomainError;
};

/// Electrostatic distance does not exceed the offset being removed.
class UnphysicalGap : public DomainError {
public:
    using DomainError::DomainError;
};

/// Malformed input file. `line()` is 1-based; 0 when not line-specific.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace surfcap
