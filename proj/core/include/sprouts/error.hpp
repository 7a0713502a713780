#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sprouts {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed position text. `offset` is the byte index where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// The letter alphabet ran out while rendering a position.
class RenderError : public Error {
 public:
  using Error::Error;
};

/// The node budget given to a search was exhausted.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An invariant of the search was violated (conflicting nimbers, nimber cap hit).
class SearchDefect : public Error {
 public:
  using Error::Error;
};

/// The search was cancelled from outside (steering session closed).
class SearchAborted : public Error {
 public:
  using Error::Error;
};

class StoreError : public Error {
 public:
  using Error::Error;
};

class CheckError : public Error {
 public:
  using Error::Error;
};

class SessionError : public Error {
 public:
  using Error::Error;
};

}  // namespace sprouts
