#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lincls {

/// Input data could not be used: bad file contents, schema mismatch, a fold
/// that cannot be stratified, and so on.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax or content error while reading ARFF or CSV text.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what);

  /// 1-based line number of the offending input line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An objective or solver produced a non-finite value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lincls
