#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tfree {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arrangement, basis or family text. Carries the 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Operation needs an irreducible arrangement of rank >= 3.
class ReducibleInput : public Error {
 public:
  using Error::Error;
};

/// Exponents requested for an arrangement that is not totally free.
class NotTotallyFree : public Error {
 public:
  using Error::Error;
};

/// A mathematical guarantee failed to hold; indicates a bug.
class InternalInvariant : public Error {
 public:
  using Error::Error;
};

}  // namespace tfree
