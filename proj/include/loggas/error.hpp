#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace loggas {

// Error taxonomy for the whole library. code() is a stable machine-readable
// tag; the CLI prints failures as "error: <code>: <message>" and maps the
// category to its exit code, so codes must not change casually.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Caller passed something malformed: bad sizes, bad flags, out-of-range
// parameters. CLI exit code 1.
class InvalidInputError : public Error {
public:
    explicit InvalidInputError(const std::string& message)
        : Error("invalid-input", message) {}
    InvalidInputError(std::string code, const std::string& message)
        : Error(std::move(code), message) {}
};

// Input is well-formed but mathematically outside an operation's domain
// (coincident points, evaluation at a pole, unsupported parameter regime).
// CLI exit code 3.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& message)
        : Error("domain", message) {}
    DomainError(std::string code, const std::string& message)
        : Error(std::move(code), message) {}
};

// Requested form is recognized but deliberately not handled (rational
// superpotentials in the polynomial recursion, deformations beyond
// codimension one). CLI exit code 3.
class UnsupportedError : public Error {
public:
    explicit UnsupportedError(const std::string& message)
        : Error("unsupported-form", message) {}
    UnsupportedError(std::string code, const std::string& message)
        : Error(std::move(code), message) {}
};

// An iterative process ran out of budget or a stochastic integrator could
// not take a valid step. CLI exit code 2.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& message)
        : Error("convergence", message) {}
    ConvergenceError(std::string code, const std::string& message)
        : Error(std::move(code), message) {}
};

// An integrand or callback produced a non-finite value; carries the node at
// which it happened. CLI exit code 3.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& message, std::complex<double> node)
        : Error("evaluation", message), node_(node) {}

    std::complex<double> node() const noexcept { return node_; }

private:
    std::complex<double> node_;
};

}  // namespace loggas
