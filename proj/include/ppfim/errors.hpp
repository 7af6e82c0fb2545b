#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ppfim {

// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed basket input; carries the 1-based line number of the offending line.
struct ParseError : Error {
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_no(line) {}

  std::size_t line_no;
};

// An operation that needs at least one transaction got none.
struct EmptyDatabaseError : Error {
  using Error::Error;
};

// Parameter outside its documented domain (thresholds, sizes, key ranges, ...).
struct InvalidParameterError : Error {
  using Error::Error;
};

// A byte outside [0, 127] reached the 7-bit cipher pipeline.
struct ByteDomainError : Error {
  using Error::Error;
};

// Attempt to draw from an exhausted id pool.
struct EmptyPoolError : Error {
  using Error::Error;
};

// Aggregation started before every partition delivered its report.
struct IncompleteAggregationError : Error {
  IncompleteAggregationError(std::size_t partition, const std::string& message)
      : Error(message), partition_index(partition) {}

  std::size_t partition_index;
};

}  // namespace ppfim
