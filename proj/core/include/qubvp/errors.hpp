#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qubvp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a map or formula (e.g. xi outside [0,1]).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration: too few intervals, non-nested meshes, bad factors.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// f or g returned a non-finite value or a vector of the wrong size.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, std::size_t node)
        : Error(what), node_(node) {}

    /// Interval index for f failures, the node count N for boundary failures.
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

/// The structured Newton matrix is singular or numerically rank deficient.
class LinearSolveError : public Error {
public:
    LinearSolveError(const std::string& what, int iteration = -1)
        : Error(what), iteration_(iteration) {}

    /// Newton iteration (1-based) at which the solve failed, -1 if unknown.
    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

/// Newton updates blew up far beyond their initial size.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, int iteration)
        : Error(what), iteration_(iteration) {}

    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

/// A level of the refinement continuation did not converge.
class ContinuationError : public Error {
public:
    ContinuationError(const std::string& what, int level, double last_update_norm)
        : Error(what), level_(level), last_update_norm_(last_update_norm) {}

    int level() const noexcept { return level_; }
    double last_update_norm() const noexcept { return last_update_norm_; }

private:
    int level_;
    double last_update_norm_;
};

}  // namespace qubvp
