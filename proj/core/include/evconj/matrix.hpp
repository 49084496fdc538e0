#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace evconj {

using Integer = boost::multiprecision::cpp_int;

/// Rectangular matrix of nonnegative arbitrary-precision integers.
///
/// Every constructor rejects negative entries, so a NonNegMatrix value is always
/// nonnegative. Subtraction is deliberately absent; see `signed_difference` for
/// residual reporting.
class NonNegMatrix {
 public:
  NonNegMatrix() = default;
  NonNegMatrix(std::size_t rows, std::size_t cols);
  NonNegMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

  /// Row-list literal, e.g. `NonNegMatrix::from_rows({{1, 1}, {1, 0}})`.
  static NonNegMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);
  static NonNegMatrix from_rows(const std::vector<std::vector<Integer>>& rows);
  static NonNegMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  /// Sets an entry; throws StructuralError for negative values.
  void set(std::size_t r, std::size_t c, Integer value);
  void add(std::size_t r, std::size_t c, const Integer& value) { data_[r * cols_ + c] += value; }

  const std::vector<Integer>& entries() const noexcept { return data_; }
  std::vector<std::vector<Integer>> to_rows() const;

  NonNegMatrix transpose() const;
  Integer max_entry() const;
  Integer entry_sum() const;
  bool is_zero() const;

  friend bool operator==(const NonNegMatrix& a, const NonNegMatrix& b) = default;
  friend bool operator<(const NonNegMatrix& a, const NonNegMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Matrix product; throws DimensionError naming both shapes when they do not compose.
NonNegMatrix multiply(const NonNegMatrix& a, const NonNegMatrix& b, const char* label = "product");
inline NonNegMatrix operator*(const NonNegMatrix& a, const NonNegMatrix& b) { return multiply(a, b); }

/// Exact power of a square matrix (`power(A, 0)` is the identity).
NonNegMatrix power(const NonNegMatrix& a, unsigned exponent);

/// Exact determinant (Bareiss fraction-free elimination).
Integer determinant(const NonNegMatrix& a);

/// Entrywise a - b rendered as a signed matrix string, used in error messages.
std::string signed_difference(const NonNegMatrix& a, const NonNegMatrix& b);

std::ostream& operator<<(std::ostream& os, const NonNegMatrix& m);

}  // namespace evconj
