#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evconj/matrix.hpp"

namespace evconj {

/// {0,1} matrix with exactly one nonzero per column and at least one per row.
bool is_division_matrix(const NonNegMatrix& m);
/// Transpose of a division matrix.
bool is_amalgamation_matrix(const NonNegMatrix& m);

/// A = R S and S R = B, exactly. Throws DimensionError naming the product that fails to compose.
bool verify_elementary(const NonNegMatrix& a, const NonNegMatrix& r, const NonNegMatrix& s,
                       const NonNegMatrix& b);

/// Witness (R_A, S, R_B) of a balanced elementary equivalence from A to B:
/// A = S R_A, B = S R_B and R_A S = R_B S.
struct BeeTriple {
  NonNegMatrix r_a;
  NonNegMatrix s;
  NonNegMatrix r_b;

  /// The same witness read from B to A.
  BeeTriple reversed() const { return {r_b, s, r_a}; }
  friend bool operator==(const BeeTriple&, const BeeTriple&) = default;
};

/// Exact check of the three defining identities. Throws DimensionError when the shapes of
/// A, B and the triple are inconsistent.
bool verify_balanced_elementary(const NonNegMatrix& a, const NonNegMatrix& b, const BeeTriple& t);

struct PowerRelation {
  unsigned n = 0;
  bool a_relation = false;  // A^{n+1} == B^n A
  bool b_relation = false;  // B^{n+1} == A^n B
};

struct InvariantReport {
  Integer det_a;
  Integer det_b;
  bool det_equal = false;
  std::vector<PowerRelation> power_relations;

  bool all_pass() const;
  /// Human-readable reason for the first failing screen, empty when all pass.
  std::string first_failure() const;
};

/// Necessary conditions for balanced elementary equivalence, checked for n = 1..n_max.
InvariantReport necessary_invariants(const NonNegMatrix& a, const NonNegMatrix& b,
                                     unsigned n_max);

struct SearchBounds {
  /// Largest inner dimension m tried (defaults to n).
  std::optional<std::size_t> max_inner_dim;
  /// Largest entry allowed in S, R_A, R_B (defaults to the largest entry of A and B).
  std::optional<Integer> entry_cap;
  /// Refuse searches whose estimated candidate count exceeds this.
  std::uint64_t budget = 2'000'000'000ULL;
  /// Skip S with a zero row and matrices with a zero row (zero rows are sinks in graph terms).
  bool sink_free = false;
};

struct DecideResult {
  std::optional<BeeTriple> triple;
  /// Set when a necessary-condition screen rejected the pair before any search.
  std::string screen_failure;
  std::size_t inner_dim_max = 0;
  Integer entry_cap;
  /// Number of S candidates examined.
  std::uint64_t s_candidates = 0;
};

/// Bounded exhaustive decision of balanced elementary equivalence.
///
/// Enumerates m = 1..m_max and, for each m, all n x m matrices S with entries in
/// [0, cap] in row-major lexicographic order; for each S the R_A, R_B with entries in
/// [0, cap] solving A = S R_A and B = S R_B are enumerated and paired on R_A S = R_B S.
/// Returns the first verifying triple in (m, S, R_A, R_B) lexicographic order. Only
/// S whose columns are lexicographically non-decreasing are visited: permuting the
/// columns of S (and rows of R_A, R_B) maps solutions to solutions, and the
/// lexicographically least solution S always has sorted columns.
///
/// Throws DimensionError for non-square or mismatched inputs and SearchBudgetExceeded
/// when the candidate estimate exceeds `bounds.budget`.
DecideResult decide_balanced_elementary(const NonNegMatrix& a, const NonNegMatrix& b,
                                        const SearchBounds& bounds = {});

/// Chain A_0 .. A_k of square matrices with a balanced elementary witness per link.
struct BsseCertificate {
  std::vector<NonNegMatrix> matrices;
  std::vector<BeeTriple> links;
};

/// True iff every link verifies; a single matrix with no links is the trivial chain.
/// Throws StructuralError for an empty chain or a
/// matrix/link count mismatch, DimensionError (naming the link) for dimension drift.
bool verify_certificate(const BsseCertificate& c);

struct BsseSearchResult {
  std::optional<BsseCertificate> certificate;
  /// Distinct matrices expanded or generated during the search.
  std::uint64_t explored = 0;
  unsigned depth_reached = 0;
};

/// Breadth-first search over balanced elementary steps (within `bounds`, intermediate
/// matrices also capped at the entry cap) for a shortest certificate from A to B.
/// Neighbours are generated in canonical order, so the result is deterministic.
/// Throws SearchBudgetExceeded (carrying the explored count) when more than
/// `state_budget` matrices would be generated.
BsseSearchResult bsse_search(const NonNegMatrix& a, const NonNegMatrix& b, unsigned depth_max,
                             const SearchBounds& bounds = {},
                             std::uint64_t state_budget = 200'000);

/// All matrices B with B = S R_B for some (R_A, S, R_B) balanced from A within bounds,
/// entries of B capped at the entry cap, in sorted order with one witness each.
std::vector<std::pair<NonNegMatrix, BeeTriple>> balanced_neighbours(const NonNegMatrix& a,
                                                                    const SearchBounds& bounds);

}  // namespace evconj
