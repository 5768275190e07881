#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tscv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point or argument lies outside the set an operation is defined on.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An invalid numeric parameter (non-positive step, zero direction, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A truncated time scale turned out to be empty.
class DegenerateScaleError : public Error {
public:
    using Error::Error;
};

/// Input data violates an operation's precondition (boundary values, grids).
class ContractError : public Error {
public:
    using Error::Error;
};

/// Malformed text input. `offset` is a byte offset for expressions and a
/// 1-based line number for problem files; `kind()` tells which.
class ParseError : public Error {
public:
    enum class Location { byte_offset, line };

    ParseError(const std::string& what, std::size_t position, Location loc = Location::byte_offset)
        : Error(what), position_(position), location_(loc) {}

    std::size_t position() const noexcept { return position_; }
    Location kind() const noexcept { return location_; }

private:
    std::size_t position_;
    Location location_;
};

/// Expression evaluation hit a singular argument (log/sqrt of a negative
/// number, division by zero). Carries the evaluation point.
class EvalError : public Error {
public:
    EvalError(const std::string& what, double t, double y, double v)
        : Error(what), t_(t), y_(y), v_(v) {}

    double t() const noexcept { return t_; }
    double y() const noexcept { return y_; }
    double v() const noexcept { return v_; }

private:
    double t_, y_, v_;
};

/// Linear algebra or line-search failure inside a solver.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Newton iteration exhausted its budget. The last iterate (sample values on
/// the solver grid) is attached so callers can inspect it.
class IterationLimitError : public NumericalError {
public:
    IterationLimitError(const std::string& what, std::vector<double> last_iterate)
        : NumericalError(what), last_iterate_(std::move(last_iterate)) {}

    const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

private:
    std::vector<double> last_iterate_;
};

/// The isoperimetric constraint cannot be met from the starting point.
class InfeasibleError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace tscv
