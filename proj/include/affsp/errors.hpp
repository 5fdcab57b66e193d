#pragma once

#include <stdexcept>
#include <string>

namespace affsp {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (n = 0, unknown family,
/// non-closed index set, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Matrix or vector dimensions do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Degree requested beyond what a complex was built for.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Memory guard tripped.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A computed object failed a structural self-check (d∘d ≠ 0, module law, ...).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input or filesystem failure.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace affsp
