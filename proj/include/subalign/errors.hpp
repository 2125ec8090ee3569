#pragma once

#include <stdexcept>
#include <string>

namespace subalign {

/// Bad arguments, malformed files, unsupported parameter combinations.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A desk-scale enumeration cap was exceeded. Callers may retry with smaller inputs.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal identity that must hold by construction failed. Always a bug.
struct invariant_fault : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace subalign
