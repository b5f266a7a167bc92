#pragma once

#include <stdexcept>
#include <string>

namespace qutv {

// Every failure the library raises derives from Error, so callers can catch
// the whole family or a specific condition.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operand shapes incompatible with the requested operation.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A complex matrix handed to from_adjoint lacks the required block symmetry.
class NotAnAdjoint : public Error {
 public:
  using Error::Error;
};

// An iterative backend (complex SVD) failed to converge.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

// Truncation or sketch rank outside the valid range.
class BadRank : public Error {
 public:
  using Error::Error;
};

// The shortcut pseudo-inverse is numerically singular; retry without shortcut.
class SingularSketch : public Error {
 public:
  using Error::Error;
};

// Parameter combination violates a precondition (bounds inputs, sketch dims).
class BadParams : public Error {
 public:
  using Error::Error;
};

// Relative error against a zero reference is undefined.
class ZeroReference : public Error {
 public:
  using Error::Error;
};

// Malformed text or image input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Filesystem read/write failure.
class IoError : public Error {
 public:
  using Error::Error;
};

// Video frames disagree on dimensions.
class FrameSizeMismatch : public Error {
 public:
  using Error::Error;
};

// Serialized blob has an unknown magic or version.
class FormatVersionMismatch : public Error {
 public:
  using Error::Error;
};

// Experiment configuration missing or inconsistent; message names the field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qutv
