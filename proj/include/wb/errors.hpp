#pragma once

#include <stdexcept>

namespace wb {

// File and format problems; the CLI maps these to their own exit code.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace wb
