#pragma once

#include <stdexcept>
#include <string>

namespace alphanet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Digraph invariant violated, or two realizations do not share a topology.
class TopologyError : public Error {
public:
    using Error::Error;
};

/// Operating point / classification / law belong to different circuits.
class MismatchError : public Error {
public:
    using Error::Error;
};

/// A wing law is not part of the total law it is evaluated against.
class CompositionError : public Error {
public:
    using Error::Error;
};

/// Argument outside the supported domain (v_in <= 0, alpha < 1, D <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A stepwise merge schedule does not cover every participant exactly once.
class ScheduleError : public Error {
public:
    using Error::Error;
};

/// Malformed netlist, law string or config file.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Random generator could not produce a valid circuit within its budget.
class GenerationError : public Error {
public:
    using Error::Error;
};

/// Newton iteration (including homotopy fallback) failed.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double best_residual)
        : Error(what), best_residual_(best_residual) {}

    /// Smallest scaled KCL residual reached before giving up.
    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

}  // namespace alphanet
