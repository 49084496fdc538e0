#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>

#include "evconj/errors.hpp"
#include "evconj/intmat.hpp"

namespace evconj {

namespace {

using Small = std::int64_t;
using Flat = std::vector<Small>;  // row-major small matrix or vector

// Every vector of length `len` with entries in [0, cap], in lexicographic order.
std::vector<Flat> box_vectors(std::size_t len, Small cap) {
  std::vector<Flat> out;
  Flat v(len, 0);
  while (true) {
    out.push_back(v);
    std::size_t pos = len;
    while (pos > 0) {
      --pos;
      if (v[pos] < cap) {
        ++v[pos];
        std::fill(v.begin() + static_cast<std::ptrdiff_t>(pos) + 1, v.end(), 0);
        break;
      }
      if (pos == 0) return out;
    }
    if (len == 0) return out;
  }
}

Small dot(const Flat& a, const Flat& b) {
  Small s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Entries of `m` as int64, or nullopt when some entry is out of range.
std::optional<Flat> to_small(const NonNegMatrix& m) {
  Flat out;
  out.reserve(m.entries().size());
  for (const auto& v : m.entries()) {
    if (v > std::numeric_limits<Small>::max() / 4) return std::nullopt;
    out.push_back(static_cast<Small>(v));
  }
  return out;
}

NonNegMatrix from_small(std::size_t rows, std::size_t cols, const Flat& f) {
  std::vector<Integer> entries(f.begin(), f.end());
  return NonNegMatrix(rows, cols, std::move(entries));
}

// (cap+1)^exponent saturated at `limit + 1`.
std::uint64_t saturating_pow(std::uint64_t base, std::size_t exponent, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (r > limit / base) return limit + 1;
    r *= base;
  }
  return r;
}

struct ResolvedBounds {
  std::size_t n = 0;
  std::size_t m_max = 0;
  Small cap = 0;
  Integer cap_big;
};

ResolvedBounds resolve(const NonNegMatrix& a, const NonNegMatrix* b, const SearchBounds& bounds) {
  ResolvedBounds r;
  r.n = a.rows();
  r.m_max = bounds.max_inner_dim.value_or(r.n);
  Integer cap = bounds.entry_cap.value_or(b ? std::max(a.max_entry(), b->max_entry()) : a.max_entry());
  if (cap < 0) throw ContractViolation("entry cap must be nonnegative");
  std::uint64_t estimate = 0;
  const std::uint64_t limit = bounds.budget;
  if (cap >= Integer(limit)) {
    throw SearchBudgetExceeded("search space too large: entry cap " + cap.str() +
                                   " exceeds the budget",
                               limit + 1);
  }
  const auto base = static_cast<std::uint64_t>(cap) + 1;
  for (std::size_t m = 1; m <= r.m_max; ++m) {
    estimate += saturating_pow(base, r.n * m, limit);
    if (estimate > limit) {
      throw SearchBudgetExceeded("search space too large: more than " + std::to_string(limit) +
                                     " candidate matrices S (n=" + std::to_string(r.n) +
                                     ", m<=" + std::to_string(r.m_max) + ", cap=" + cap.str() + ")",
                                 estimate);
    }
  }
  r.cap = static_cast<Small>(cap);
  r.cap_big = cap;
  return r;
}

// Depth-first enumeration of S (n x m) row by row, in row-major lexicographic order,
// restricted to lexicographically non-decreasing columns, pruned by the column
// equations S x_j = a_j (and S y_j = b_j when a second target is given).
class SEnumerator {
 public:
  SEnumerator(std::size_t n, std::size_t m, Small cap, bool sink_free)
      : n_(n), m_(m), sink_free_(sink_free), rows_(box_vectors(m, cap)), xs_(box_vectors(m, cap)) {}

  const std::vector<Flat>& column_space() const { return xs_; }

  // Visitor gets (S rows, candidate index lists per target column) and returns true to stop.
  template <typename Visitor>
  std::uint64_t run(const std::vector<Flat>& targets_by_column, Visitor&& visit) {
    // targets_by_column[j] is column j of the stacked targets (length n).
    const std::size_t cols = targets_by_column.size();
    std::vector<std::vector<std::uint32_t>> initial(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      initial[j].resize(xs_.size());
      for (std::uint32_t k = 0; k < xs_.size(); ++k) initial[j][k] = k;
    }
    std::vector<Flat> s_rows;
    std::vector<bool> tied(m_ > 0 ? m_ - 1 : 0, true);
    std::uint64_t leaves = 0;
    bool stop = false;
    auto recurse = [&](auto&& self, std::size_t row,
                       const std::vector<std::vector<std::uint32_t>>& cands,
                       const std::vector<bool>& tie) -> void {
      if (row == n_) {
        ++leaves;
        stop = visit(s_rows, cands);
        return;
      }
      for (const Flat& r : rows_) {
        if (stop) return;
        if (sink_free_ && std::all_of(r.begin(), r.end(), [](Small v) { return v == 0; })) continue;
        bool order_ok = true;
        for (std::size_t c = 0; c + 1 < m_; ++c) {
          if (tie[c] && r[c] > r[c + 1]) {
            order_ok = false;
            break;
          }
        }
        if (!order_ok) continue;
        std::vector<std::vector<std::uint32_t>> next(cols);
        bool alive = true;
        for (std::size_t j = 0; j < cols && alive; ++j) {
          const Small want = targets_by_column[j][row];
          for (std::uint32_t k : cands[j]) {
            if (dot(r, xs_[k]) == want) next[j].push_back(k);
          }
          alive = !next[j].empty();
        }
        if (!alive) continue;
        std::vector<bool> next_tie(tie.size());
        for (std::size_t c = 0; c < tie.size(); ++c) next_tie[c] = tie[c] && r[c] == r[c + 1];
        s_rows.push_back(r);
        self(self, row + 1, next, next_tie);
        s_rows.pop_back();
      }
    };
    recurse(recurse, 0, initial, tied);
    return leaves;
  }

 private:
  std::size_t n_;
  std::size_t m_;
  bool sink_free_;
  std::vector<Flat> rows_;
  std::vector<Flat> xs_;
};

std::vector<Flat> columns_of(const Flat& mat, std::size_t n) {
  std::vector<Flat> cols(n, Flat(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cols[j][i] = mat[i * n + j];
  return cols;
}

// All R (m x n, row-major) whose column j is one of xs[cands[j]], sorted.
std::vector<Flat> assemble_r(const std::vector<Flat>& xs,
                             const std::vector<std::vector<std::uint32_t>>& cands,
                             std::size_t first, std::size_t n, std::size_t m) {
  std::vector<Flat> out;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    Flat r(m * n);
    for (std::size_t j = 0; j < n; ++j) {
      const Flat& x = xs[cands[first + j][pick[j]]];
      for (std::size_t k = 0; k < m; ++k) r[k * n + j] = x[k];
    }
    out.push_back(std::move(r));
    std::size_t pos = n;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++pick[pos] < cands[first + pos].size()) {
        done = false;
        break;
      }
      pick[pos] = 0;
    }
    if (done) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// R (m x n) times S (n x m).
Flat r_times_s(const Flat& r, const std::vector<Flat>& s_rows, std::size_t n, std::size_t m) {
  Flat out(m * m, 0);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      const Small v = r[k * n + j];
      if (v == 0) continue;
      for (std::size_t l = 0; l < m; ++l) out[k * m + l] += v * s_rows[j][l];
    }
  return out;
}

Flat flatten_rows(const std::vector<Flat>& rows) {
  Flat out;
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

void require_square_pair(const NonNegMatrix& a, const NonNegMatrix& b, const char* what) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows() || a.rows() == 0) {
    throw DimensionError(std::string(what) + ": A and B must be nonempty square matrices of equal size (got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
  }
}

bool has_zero_row(const NonNegMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < m.cols() && zero; ++j) zero = m(i, j) == 0;
    if (zero) return true;
  }
  return false;
}

DecideResult decide_resolved(const NonNegMatrix& a, const NonNegMatrix& b,
                             const ResolvedBounds& rb, bool sink_free) {
  DecideResult result;
  result.inner_dim_max = rb.m_max;
  result.entry_cap = rb.cap_big;
  if (sink_free && (has_zero_row(a) || has_zero_row(b))) {
    result.screen_failure = "zero row (sink) in A or B";
    return result;
  }
  const InvariantReport screen = necessary_invariants(a, b, 1);
  if (!screen.all_pass()) {
    result.screen_failure = screen.first_failure();
    return result;
  }
  const auto a_small = to_small(a);
  const auto b_small = to_small(b);
  if (!a_small || !b_small) return result;  // entries beyond any S R with bounded factors
  const std::size_t n = rb.n;
  std::vector<Flat> targets = columns_of(*a_small, n);
  const auto b_cols = columns_of(*b_small, n);
  targets.insert(targets.end(), b_cols.begin(), b_cols.end());

  for (std::size_t m = 1; m <= rb.m_max && !result.triple; ++m) {
    SEnumerator en(n, m, rb.cap, sink_free);
    const auto& xs = en.column_space();
    result.s_candidates += en.run(targets, [&](const std::vector<Flat>& s_rows,
                                               const std::vector<std::vector<std::uint32_t>>& cands) {
      const auto ra_all = assemble_r(xs, cands, 0, n, m);
      const auto rb_all = assemble_r(xs, cands, n, n, m);
      std::map<Flat, const Flat*> first_rb;
      for (const auto& r : rb_all) first_rb.emplace(r_times_s(r, s_rows, n, m), &r);
      for (const auto& r : ra_all) {
        auto it = first_rb.find(r_times_s(r, s_rows, n, m));
        if (it != first_rb.end()) {
          result.triple = BeeTriple{from_small(m, n, r), from_small(n, m, flatten_rows(s_rows)),
                                    from_small(m, n, *it->second)};
          return true;
        }
      }
      return false;
    });
  }
  return result;
}

}  // namespace

DecideResult decide_balanced_elementary(const NonNegMatrix& a, const NonNegMatrix& b,
                                        const SearchBounds& bounds) {
  require_square_pair(a, b, "decide_balanced_elementary");
  const ResolvedBounds rb = resolve(a, &b, bounds);
  return decide_resolved(a, b, rb, bounds.sink_free);
}

namespace {

std::vector<std::pair<NonNegMatrix, BeeTriple>> neighbours_resolved(const NonNegMatrix& a,
                                                                    const ResolvedBounds& rb,
                                                                    bool sink_free) {
  std::map<NonNegMatrix, BeeTriple> found;
  const auto a_small = to_small(a);
  if (!a_small) return {};
  const std::size_t n = rb.n;
  const auto targets = columns_of(*a_small, n);
  const auto r_rows = box_vectors(n, rb.cap);
  for (std::size_t m = 1; m <= rb.m_max; ++m) {
    SEnumerator en(n, m, rb.cap, sink_free);
    const auto& xs = en.column_space();
    en.run(targets, [&](const std::vector<Flat>& s_rows,
                        const std::vector<std::vector<std::uint32_t>>& cands) {
      const Flat s_flat = flatten_rows(s_rows);
      std::set<Flat> keys_done;
      for (const auto& ra : assemble_r(xs, cands, 0, n, m)) {
        const Flat key = r_times_s(ra, s_rows, n, m);
        if (!keys_done.insert(key).second) continue;
        // Row k of R_B must satisfy r S = key row k.
        std::vector<std::vector<const Flat*>> row_cands(m);
        bool alive = true;
        for (std::size_t k = 0; k < m && alive; ++k) {
          for (const auto& r : r_rows) {
            bool ok = true;
            for (std::size_t l = 0; l < m && ok; ++l) {
              Small v = 0;
              for (std::size_t j = 0; j < n; ++j) v += r[j] * s_rows[j][l];
              ok = v == key[k * m + l];
            }
            if (ok) row_cands[k].push_back(&r);
          }
          alive = !row_cands[k].empty();
        }
        if (!alive) continue;
        std::vector<std::size_t> pick(m, 0);
        while (true) {
          Flat rb_flat;
          for (std::size_t k = 0; k < m; ++k)
            rb_flat.insert(rb_flat.end(), row_cands[k][pick[k]]->begin(), row_cands[k][pick[k]]->end());
          Flat bmat(n * n, 0);
          bool within = true;
          for (std::size_t i = 0; i < n && within; ++i)
            for (std::size_t j = 0; j < n && within; ++j) {
              Small v = 0;
              for (std::size_t k = 0; k < m; ++k) v += s_rows[i][k] * rb_flat[k * n + j];
              bmat[i * n + j] = v;
              within = v <= rb.cap;
            }
          if (within && sink_free) {
            for (std::size_t i = 0; i < n && within; ++i) {
              within = std::any_of(bmat.begin() + static_cast<std::ptrdiff_t>(i * n),
                                   bmat.begin() + static_cast<std::ptrdiff_t>((i + 1) * n),
                                   [](Small v) { return v != 0; });
            }
          }
          if (within) {
            NonNegMatrix bm = from_small(n, n, bmat);
            found.try_emplace(std::move(bm), BeeTriple{from_small(m, n, ra), from_small(n, m, s_flat),
                                                       from_small(m, n, rb_flat)});
          }
          std::size_t pos = m;
          bool done = true;
          while (pos > 0) {
            --pos;
            if (++pick[pos] < row_cands[pos].size()) {
              done = false;
              break;
            }
            pick[pos] = 0;
          }
          if (done) break;
        }
      }
      return false;
    });
  }
  return {found.begin(), found.end()};
}

}  // namespace

std::vector<std::pair<NonNegMatrix, BeeTriple>> balanced_neighbours(const NonNegMatrix& a,
                                                                    const SearchBounds& bounds) {
  if (!a.is_square() || a.rows() == 0) {
    throw DimensionError("balanced_neighbours: A must be a nonempty square matrix");
  }
  const ResolvedBounds rb = resolve(a, nullptr, bounds);
  return neighbours_resolved(a, rb, bounds.sink_free);
}

BsseSearchResult bsse_search(const NonNegMatrix& a, const NonNegMatrix& b, unsigned depth_max,
                             const SearchBounds& bounds, std::uint64_t state_budget) {
  require_square_pair(a, b, "bsse_search");
  if (depth_max == 0) throw ContractViolation("bsse_search: depth_max must be at least 1");
  const ResolvedBounds rb = resolve(a, &b, bounds);
  BsseSearchResult result;

  std::map<NonNegMatrix, std::pair<NonNegMatrix, BeeTriple>> parent;
  std::set<NonNegMatrix> visited{a};
  std::vector<NonNegMatrix> layer{a};
  result.explored = 1;

  for (unsigned depth = 1; depth <= depth_max; ++depth) {
    result.depth_reached = depth;
    for (const auto& node : layer) {
      DecideResult step = decide_resolved(node, b, rb, bounds.sink_free);
      if (!step.triple) continue;
      BsseCertificate cert;
      std::vector<NonNegMatrix> chain{b, node};
      std::vector<BeeTriple> links{*step.triple};
      NonNegMatrix cursor = node;
      while (cursor != a) {
        const auto& [prev, triple] = parent.at(cursor);
        chain.push_back(prev);
        links.push_back(triple);
        cursor = prev;
      }
      std::reverse(chain.begin(), chain.end());
      std::reverse(links.begin(), links.end());
      cert.matrices = std::move(chain);
      cert.links = std::move(links);
      result.certificate = std::move(cert);
      return result;
    }
    if (depth == depth_max) break;
    std::vector<NonNegMatrix> next;
    for (const auto& node : layer) {
      for (auto& [m, t] : neighbours_resolved(node, rb, bounds.sink_free)) {
        if (!visited.insert(m).second) continue;
        ++result.explored;
        if (result.explored > state_budget) {
          throw SearchBudgetExceeded("bsse_search: explored more than " +
                                         std::to_string(state_budget) + " matrices at depth " +
                                         std::to_string(depth),
                                     result.explored);
        }
        parent.emplace(m, std::make_pair(node, t));
        next.push_back(m);
      }
    }
    if (next.empty()) break;
    layer = std::move(next);
  }
  return result;
}

}  // namespace evconj
