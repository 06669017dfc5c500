#pragma once

#include <stdexcept>
#include <string>

namespace circlepat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Vertex or edge reference out of range, or mismatched vector sizes.
class IndexError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation
/// (non-positive radius, angle outside (0, pi), u >= 0 hyperbolically, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Target curvature fails the attainability test, or the problem is too
/// large to decide it.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Hard numerical failure inside a solver (e.g. a singular Newton system).
/// Ordinary non-convergence is reported through SolveReport instead.
class SolverError : public Error {
public:
    using Error::Error;
};

}  // namespace circlepat
