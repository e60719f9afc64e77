#pragma once

#include <stdexcept>
#include <string>

namespace ctwalk {

// Base for everything this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid configuration (bad distribution parameters, malformed block runs, ...).
struct config_error : error {
    using error::error;
};

// Invalid argument to an operation (vertex out of range, unknown eigenvalue,
// dimension above an enforced bound, negative time for the classical walk).
struct argument_error : error {
    using error::error;
};

// Structural precondition not met (disconnected graph, wrong model family,
// requested start part is empty).
struct precondition_error : error {
    using error::error;
};

// Requested closed-form entry lies outside the index ranges the formula covers.
struct coverage_error : error {
    using error::error;
};

// Internal cross-check failed (degree mismatch at construction, eigenvector
// residual too large, probability mass out of bounds). Indicates a bug, not
// user error.
struct consistency_error : error {
    using error::error;
};

} // namespace ctwalk
