#pragma once

#include <stdexcept>
#include <string>

namespace bellops {

// Mismatched dimensions or malformed containers.
struct shape_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A multi-index entry outside [0, r).
struct invalid_index_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Parameter outside an operation's mathematical domain.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Problem size exceeds an enumeration or memory guard.
struct size_limit_error : std::length_error {
    using std::length_error::length_error;
};

// Coefficient input that cannot be normalized.
struct degenerate_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Iterative method exhausted its iteration budget.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite values or a broken numeric invariant.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inverse transform input whose preimage is not a sign function.
struct not_sign_function_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Bad campaign or CLI configuration.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace bellops
