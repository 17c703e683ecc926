#pragma once

#include <stdexcept>
#include <string>

namespace hypergap {

// Numerical machinery failed (integrator step, eigensolver non-convergence).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// A certified mathematical property failed at solver tolerance; signals a bug
// or an invalid domain, never a recoverable condition.
class InvariantViolation : public std::runtime_error {
public:
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

// Operation called outside the parameter regime in which its statement holds.
class InvalidRegime : public std::runtime_error {
public:
    explicit InvalidRegime(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hypergap
