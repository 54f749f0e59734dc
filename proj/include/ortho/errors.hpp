#pragma once

#include <stdexcept>
#include <string>

namespace ortho {

/// Evaluation requested at or too close to a pole of the function.
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

/// An iterative scheme exhausted its budget without meeting its tolerance.
struct NonConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A configurable resource cap (digit budget, exact-mode size cap) was hit.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An index or argument fell outside the range covered by a table or grid.
struct CoverageError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// The integrand/function modulus on a contour fell below the safe floor.
struct BoundaryZeroError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Not enough extrema / sign changes / samples for the requested estimate.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A solver finished but its reported residual exceeds the requested tolerance.
struct ToleranceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ortho
