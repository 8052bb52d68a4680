#pragma once

#include <stdexcept>
#include <string>

namespace chemo {

/// A constitutive law was evaluated outside its domain (e.g. chi(v) = chi0/v
/// at v <= 0). Inside a time step this is a rejection signal; escalating it
/// to the run level means the step controller could not avoid the singularity.
struct DomainViolation : std::runtime_error {
    explicit DomainViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative solve missed its residual target within the iteration budget.
struct NonConvergence : std::runtime_error {
    NonConvergence(const std::string& what, int iterations, double residual_rel)
        : std::runtime_error(what), iterations(iterations), residual_rel(residual_rel) {}
    int iterations;
    double residual_rel;
};

/// Configuration file is syntactically broken (carries the 1-based line).
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

/// Configuration parsed but violates an invariant (names the offending value).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace chemo
