#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcayley {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. `position` is a 0-based offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Argument outside the domain of an operation, such as an index out of range
/// or a vertex missing from a tree.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A mathematical hypothesis of the requested computation fails, e.g. a
/// direction of quantum dimension 2 where geometric growth is needed.
class GateError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap would be exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcayley
