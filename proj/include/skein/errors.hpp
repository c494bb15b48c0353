#pragma once

#include <stdexcept>
#include <string>

namespace skein {

struct SkeinError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inverting zero or dividing by a non-unit.
struct NonUnit : SkeinError {
  using SkeinError::SkeinError;
};

// An admissible-omega environment was asked for a seed value it does not hold.
struct MissingSeed : SkeinError {
  using SkeinError::SkeinError;
};

// A power series inversion hit a zero leading coefficient.
struct SeriesDivergence : SkeinError {
  using SkeinError::SkeinError;
};

// The sign choice for the loop parameter contradicts the parity constraint.
struct InconsistentSign : SkeinError {
  using SkeinError::SkeinError;
};

// A slice does not fit the arity at its position in a word. Carries the
// 1-based slice index.
struct ArityMismatch : SkeinError {
  int slice_index;
  ArityMismatch(std::string msg, int idx)
      : SkeinError(std::move(msg)), slice_index(idx) {}
};

// Rewriting exhausted its fuel guard. Should never fire; kept as a hard stop.
struct NonTerminating : SkeinError {
  using SkeinError::SkeinError;
};

struct IndexOutOfRange : SkeinError {
  using SkeinError::SkeinError;
};

// Operation only defined over a cyclotomic environment.
struct RequiresCyclotomic : SkeinError {
  using SkeinError::SkeinError;
};

// A product left the finite basis it was supposed to stay in.
struct ClosureViolation : SkeinError {
  using SkeinError::SkeinError;
};

// Text input rejected at a definite position (1-based line/column).
struct ParseError : SkeinError {
  int line;
  int column;
  ParseError(std::string msg, int l, int c)
      : SkeinError(std::move(msg)), line(l), column(c) {}
};

}  // namespace skein
