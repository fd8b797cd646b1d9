#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace consensus_lab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// K out of range (K <= 2, or too large for the requested operation).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share K do not.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition was violated.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A search guard or budget was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Exact integer arithmetic would have wrapped.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input. `position` is a 0-based character offset for
/// relation text and a 1-based line number for ballot files.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}

  [[nodiscard]] std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace consensus_lab
