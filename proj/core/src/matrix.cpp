#include "evconj/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "evconj/errors.hpp"

namespace evconj {

namespace {

void check_nonnegative(const Integer& v) {
  if (v < 0) {
    throw StructuralError("negative matrix entry " + v.str());
  }
}

}  // namespace

NonNegMatrix::NonNegMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

NonNegMatrix::NonNegMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw StructuralError("matrix entry count " + std::to_string(data_.size()) +
                          " does not match " + std::to_string(rows) + "x" +
                          std::to_string(cols));
  }
  for (const auto& v : data_) check_nonnegative(v);
}

NonNegMatrix NonNegMatrix::from_rows(
    std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<std::vector<Integer>> converted;
  for (const auto& row : rows) {
    converted.emplace_back(row.begin(), row.end());
  }
  return from_rows(converted);
}

NonNegMatrix NonNegMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  std::vector<Integer> data;
  data.reserve(r * c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) {
      throw StructuralError("ragged matrix: row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(c));
    }
    data.insert(data.end(), rows[i].begin(), rows[i].end());
  }
  return NonNegMatrix(r, c, std::move(data));
}

NonNegMatrix NonNegMatrix::identity(std::size_t n) {
  NonNegMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

void NonNegMatrix::set(std::size_t r, std::size_t c, Integer value) {
  check_nonnegative(value);
  data_[r * cols_ + c] = std::move(value);
}

std::vector<std::vector<Integer>> NonNegMatrix::to_rows() const {
  std::vector<std::vector<Integer>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    out[i].assign(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  return out;
}

NonNegMatrix NonNegMatrix::transpose() const {
  NonNegMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

Integer NonNegMatrix::max_entry() const {
  Integer best = 0;
  for (const auto& v : data_) best = std::max(best, v);
  return best;
}

Integer NonNegMatrix::entry_sum() const {
  Integer sum = 0;
  for (const auto& v : data_) sum += v;
  return sum;
}

bool NonNegMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

bool operator<(const NonNegMatrix& a, const NonNegMatrix& b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
  return a.data_ < b.data_;
}

std::string NonNegMatrix::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const NonNegMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << ']';
  }
  return os << ']';
}

NonNegMatrix multiply(const NonNegMatrix& a, const NonNegMatrix& b, const char* label) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << label << ": cannot multiply " << a.rows() << "x" << a.cols() << " by " << b.rows()
       << "x" << b.cols();
    throw DimensionError(os.str());
  }
  NonNegMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) out.add(i, j, aik * b(k, j));
      }
    }
  }
  return out;
}

NonNegMatrix power(const NonNegMatrix& a, unsigned exponent) {
  if (!a.is_square()) {
    throw DimensionError("power of a non-square " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " matrix");
  }
  NonNegMatrix result = NonNegMatrix::identity(a.rows());
  NonNegMatrix base = a;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Integer determinant(const NonNegMatrix& a) {
  if (!a.is_square()) {
    throw DimensionError("determinant of a non-square matrix");
  }
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Bareiss: every division below is exact.
  std::vector<Integer> m(a.entries().begin(), a.entries().end());
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return m[i * n + j]; };
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

std::string signed_difference(const NonNegMatrix& a, const NonNegMatrix& b) {
  std::ostringstream os;
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    os << "shape " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
    return os.str();
  }
  os << '[';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) os << ',';
      Integer d = a(i, j);
      d -= b(i, j);
      os << d;
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace evconj
