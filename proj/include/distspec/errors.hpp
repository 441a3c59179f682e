#pragma once

#include <stdexcept>

namespace distspec {

// Invalid or inconsistent input: parse failures, bad parameters,
// disconnected graphs where connectivity is required.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure: eigensolver non-convergence, floating-point
// overflow, series truncation cap exceeded.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace distspec
