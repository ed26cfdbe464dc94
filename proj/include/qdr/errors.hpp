// Error types shared across the library.
#pragma once

#include <stdexcept>

namespace qdr {

/// A cell (or requested partition) is not strictly convex / not counterclockwise.
struct NonConvexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A cell is below the configured area floor.
struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested polynomial degree exceeds the quadrature catalog.
struct DegreeTooHighError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An iterative solver exhausted its iteration budget.
struct NoConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A dense linear-algebra check was asked for on a problem that is too large.
struct TooLargeForDenseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A constrained system has no free degrees of freedom.
struct EmptyInteriorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qdr
