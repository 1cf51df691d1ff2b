#pragma once
#include <stdexcept>
#include <string>

namespace pg {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when two computations that must agree do not.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace pg
