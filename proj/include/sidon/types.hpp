#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sidon {

// A sequence element. Full-scale runs reach ~1.3e11, so 32 bits is not enough.
using Term = std::uint64_t;

// 1-based index into a sequence.
using Position = std::size_t;

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A domain violation: a candidate or list breaks the Sidon property.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed input (term files, pin files, bad arguments read from disk).
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  // 1-based line number of the offending input, 0 when not line-related.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sidon
