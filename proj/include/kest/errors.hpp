#pragma once

#include <stdexcept>
#include <string>

namespace kest {

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Structurally valid input that violates a contract (length mismatch, unsorted list, ...).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a requested bias budget lies below the attainable minimum.
struct InfeasibleError : SolverError {
    InfeasibleError(const std::string& what, double certificate)
        : SolverError(what), certificate(certificate) {}
    double certificate;
};

}  // namespace kest
