#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace simrank {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration, violated size guard, or mismatched dimensions.
class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed graph, matrix, or factor input. `line()` is 1-based, 0 if unknown.
class ParseError : public IoError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : IoError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Non-finite data, solver breakdown, or a degenerate metric.
class NumericError : public Error {
 public:
  using Error::Error;
};

class UnknownLabelError : public UsageError {
 public:
  UnknownLabelError(const std::string& label, std::vector<std::string> candidates);

  const std::vector<std::string>& candidates() const noexcept { return candidates_; }

 private:
  std::vector<std::string> candidates_;
};

}  // namespace simrank
