#pragma once

#include <stdexcept>

namespace platoon {

// Bad input: malformed model, out-of-range index, inconsistent sizes.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Failure at evaluation time: marginal evaluation, singular solve, lost precision.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace platoon
