#pragma once

// Brute-force reference for balanced elementary equivalence on small matrices.
// Works on plain long long vectors and shares no code with the library search.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "support/fixtures.hpp"

namespace oracle {

using Mat = std::vector<long long>;  // row-major

// Odometer over all vectors of length `len` with entries in [0, cap]; returns false when done.
inline bool next_vector(Mat& v, long long cap) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (v[i] < cap) {
      ++v[i];
      return true;
    }
    v[i] = 0;
  }
  return false;
}

// Every m x n matrix R with entries in [0, cap] and S R = M (S is n x m), as R S products.
inline std::set<Mat> products_for(const Mat& s, const Mat& target, std::size_t n, std::size_t m, long long cap) {
  std::vector<std::vector<Mat>> column_choices(n);
  Mat r(m, 0);
  do {
    const Mat col = fixtures::naive_product(s, r, n, m, 1);
    for (std::size_t j = 0; j < n; ++j) {
      bool match = true;
      for (std::size_t i = 0; i < n && match; ++i) match = col[i] == target[i * n + j];
      if (match) column_choices[j].push_back(r);
    }
  } while (next_vector(r, cap));
  std::set<Mat> out;
  for (const auto& c : column_choices)
    if (c.empty()) return out;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    Mat full(m * n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < m; ++i) full[i * n + j] = column_choices[j][pick[j]][i];
    out.insert(fixtures::naive_product(full, s, m, n, m));
    std::size_t k = n;
    while (k-- > 0) {
      if (++pick[k] < column_choices[k].size()) break;
      pick[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

// True when some (R_A, S, R_B) with inner dimension 1..max_m and entries in [0, cap] has
// A = S R_A, B = S R_B and R_A S = R_B S.
inline bool balanced_equivalent(const Mat& a, const Mat& b, std::size_t n, std::size_t max_m, long long cap) {
  for (std::size_t m = 1; m <= max_m; ++m) {
    Mat s(n * m, 0);
    do {
      const auto pa = products_for(s, a, n, m, cap);
      if (pa.empty()) continue;
      const auto pb = products_for(s, b, n, m, cap);
      for (const auto& p : pb)
        if (pa.count(p)) return true;
    } while (next_vector(s, cap));
  }
  return false;
}

inline long long max_entry(const Mat& a, const Mat& b) {
  return std::max(*std::max_element(a.begin(), a.end()), *std::max_element(b.begin(), b.end()));
}

}  // namespace oracle
