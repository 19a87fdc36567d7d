#pragma once

#include <stdexcept>
#include <string>

namespace pvconv {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed inputs: bad descriptors, out-of-range digits, dimension mismatches.
struct UsageError : Error {
  using Error::Error;
};

// Mixing elements of two distinct number fields.
struct FieldMismatch : Error {
  using Error::Error;
};

// Operation requires a Pisot-Vijayaraghavan base.
struct NotPisot : Error {
  using Error::Error;
};

// Sign refinement hit its hard precision cap (suspected non-PV pathology).
struct PrecisionExceeded : Error {
  using Error::Error;
};

// Iteration/enumeration cap exceeded.
struct BudgetExceeded : Error {
  using Error::Error;
};

// An iterative scheme failed to converge within its cap.
struct ConvergenceError : Error {
  using Error::Error;
};

// Evaluation outside an operation's mathematical domain (zero denominators,
// degenerate words, ...).
struct DomainError : Error {
  using Error::Error;
};

}  // namespace pvconv
