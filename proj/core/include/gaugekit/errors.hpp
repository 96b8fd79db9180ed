#pragma once

#include <stdexcept>
#include <string>

namespace gaugekit {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input: failed invariants, schema violations, shape mismatches.
struct ValidationError : Error {
    using Error::Error;
};

/// An element fell outside the span it was required to live in.
struct MembershipError : ValidationError {
    using ValidationError::ValidationError;
};

/// A matrix expected to be positive definite was not.
struct NotPositiveDefinite : Error {
    double lambda_min;
    explicit NotPositiveDefinite(const std::string& what, double lmin)
        : Error(what), lambda_min(lmin) {}
};

/// Operation needs an order unit but the space declares none.
struct UnitMissing : Error {
    using Error::Error;
};

/// An iterative routine could not certify convergence.
struct ConvergenceError : Error {
    using Error::Error;
};

/// The LP pivoter exhausted its cycling guard even under Bland's rule.
struct DegenerateError : Error {
    using Error::Error;
};

} // namespace gaugekit
