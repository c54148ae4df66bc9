#pragma once

#include <stdexcept>
#include <string>

namespace ballmap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial text or map file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Operands with incompatible variable counts or map dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its stated domain (e.g. F(0) != 0 for a jet).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Exact arithmetic cannot continue: a square root or eigenvalue left the
/// Gaussian rationals. Callers may retry in floating-point mode.
class ExactUnsolvable : public Error {
 public:
  using Error::Error;
};

}  // namespace ballmap
