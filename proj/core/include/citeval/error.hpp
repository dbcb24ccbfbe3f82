#pragma once

#include <stdexcept>
#include <string>

namespace citeval {

/// Base class for every error raised by the library. The exit code maps
/// onto the command-line contract (2 validation, 3 degenerate data, 4 I/O).
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual int exit_code() const noexcept = 0;
};

/// Malformed input, broken invariant, or an invalid parameter.
class ValidationError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// Input is well-formed but carries no usable signal (no cited
/// publications, r = 1, every group below a size threshold, ...).
class DegenerateDataError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

class IoError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

/// Throws ValidationError carrying the source row when `ok` is false.
void require_row(bool ok, std::size_t row, const std::string& reason);

}  // namespace citeval
