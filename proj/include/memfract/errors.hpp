#pragma once

#include <stdexcept>
#include <string>

namespace memfract {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input bytes (CSV cells, JSON documents, ...).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Structurally valid input violating a documented invariant
/// (non-monotonic time, unequal run lengths, open sweep, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Least-squares problems that are underdetermined or rank deficient.
class FitError : public Error {
public:
    using Error::Error;
};

/// Evaluation outside a function's domain (t <= 0, gamma poles, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Gamma evaluated at a non-positive integer.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Evaluation at (or too close to) a genuine singularity, e.g. the sweep
/// vertex T of a piecewise model where (t-T)^{-alpha} diverges.
class SingularityError : public Error {
public:
    SingularityError(const std::string& msg, double where)
        : Error(msg), location_(where) {}
    double location() const { return location_; }

private:
    double location_;
};

/// Search ended with an empty feasible set (e.g. no admissible order couple).
class NoSolutionError : public Error {
public:
    using Error::Error;
};

} // namespace memfract
