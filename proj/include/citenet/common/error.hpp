#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace citenet {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data violates a documented invariant (missing IDs, NaN values, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied parameter is out of range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A binary or text file does not follow its declared format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A binary file ends early or carries garbage; `offset` is where reading failed.
class CorruptionError : public FormatError {
 public:
  CorruptionError(const std::string& what, std::uint64_t offset)
      : FormatError(what + " (at byte offset " + std::to_string(offset) + ")"), detail_(what), offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }
  /// Message without the offset suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::uint64_t offset_;
};

/// Filesystem failure; the message always names the path.
class IoError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure hit its iteration cap or diverged.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace citenet
