#pragma once

#include <stdexcept>
#include <string>

namespace msset {

struct MssetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments to an operation (horn index out of range, unknown object, ...).
struct InvalidParameter : MssetError {
    using MssetError::MssetError;
};

// A truncation depth or search cutoff is too small to give a sound answer.
struct InsufficientDepth : MssetError {
    using MssetError::MssetError;
};

struct NotAQuasiCategory : MssetError {
    using MssetError::MssetError;
};

// A bounded computation (tau1 saturation, nerve of a category with cycles)
// exceeded its cap. Never silently truncated.
struct CapExceeded : MssetError {
    using MssetError::MssetError;
};

} // namespace msset
