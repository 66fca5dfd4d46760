#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aelt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments: dimension mismatches, empty sample sets, out-of-range values.
struct InputError : Error {
    using Error::Error;
};

// Violations of structural domain requirements (e.g. |I| < 1).
struct DomainError : Error {
    using Error::Error;
};

// An iteration failed to converge. Carries the best value reached so far so
// callers can still report a usable lower bound.
struct NumericalError : Error {
    NumericalError(const std::string& msg, double best)
        : Error(msg), best_value(best) {}
    double best_value = 0.0;
};

// A parameterized search (e.g. the doubling search for e1) ran out of budget.
struct SearchFailure : Error {
    using Error::Error;
};

// Solver stalled; carries the (value, residual) trace for post-mortems.
struct NonConvergence : Error {
    NonConvergence(const std::string& msg,
                   std::vector<std::pair<double, double>> tr)
        : Error(msg), trace(std::move(tr)) {}
    std::vector<std::pair<double, double>> trace;
};

// Every descent start ended pinned to the sublevel-set boundary.
struct BoundaryTrap : Error {
    using Error::Error;
};

}  // namespace aelt
