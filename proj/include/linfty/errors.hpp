#pragma once

#include <stdexcept>
#include <string>

namespace linfty {

// Bad user-supplied data: malformed rationals, mismatched spaces, wrong
// degrees/arities.  The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// degree_of on a zero or mixed-degree element.
struct NotHomogeneous : std::runtime_error {
  explicit NotHomogeneous(const std::string& what) : std::runtime_error(what) {}
};

// A polynomial operation produced a term above the ring's degree cap.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A structural invariant that should be unreachable was violated.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace linfty
