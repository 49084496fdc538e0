#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace evconj {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: dangling edge endpoints, duplicate ids, negative entries.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition was violated (n = 0, sinks where none are allowed, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Matrix shapes do not compose.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A bounded search would exceed (or exceeded) its configured budget.
class SearchBudgetExceeded : public Error {
 public:
  SearchBudgetExceeded(const std::string& what, std::uint64_t count)
      : Error(what), count_(count) {}
  /// Estimated candidate count, or states explored before giving up.
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::uint64_t count_;
};

/// A construction failed an internal consistency check (malformed history, bad pairing).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace evconj
