#pragma once

#include <stdexcept>
#include <string>

namespace symqva {

// Base for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ArithmeticError : Error {
  using Error::Error;
};

// A rational function whose denominator vanishes at q = t = 0.
struct NotExpandableError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

// Gram-Schmidt produced a family that violates orthogonality on some pair.
struct ExistenceError : Error {
  using Error::Error;
};

struct DegenerateNormError : Error {
  using Error::Error;
};

// Negative powers of w survived a w = 0 specialization.
struct SingularSpecializationError : Error {
  using Error::Error;
};

// Broken internal invariant; indicates a bug rather than bad input.
struct InvariantError : Error {
  using Error::Error;
};

}  // namespace symqva
