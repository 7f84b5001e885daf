#pragma once

#include <stdexcept>

namespace catlab {

// Rejected input: malformed files, inadmissible matrices, bad moduli.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical breakdown or an instance that exceeds an enumeration/memory budget.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace catlab
