#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evconj/graph.hpp"
#include "evconj/intmat.hpp"
#include "evconj/moves.hpp"

namespace evconj {

using BlockTable = std::map<Path, Path>;

/// (l,c)-block map: a table from E-paths of length 1+l+c to F-paths of length 1+l.
///
/// Values built by make_block_map are total and compatible. `unchecked` skips both
/// checks so that corrupted tables can be represented and rejected by the verifiers.
class BlockMap {
 public:
  BlockMap() = default;
  static BlockMap unchecked(Graph source, Graph target, unsigned l, unsigned c, BlockTable table);

  const Graph& source() const noexcept { return source_; }
  const Graph& target() const noexcept { return target_; }
  unsigned memory() const noexcept { return l_; }
  unsigned anticipation() const noexcept { return c_; }
  std::size_t window() const noexcept { return 1 + l_ + c_; }
  const BlockTable& table() const noexcept { return table_; }

  /// Table lookup; throws ContractViolation for a path outside the table.
  const Path& at(const Path& x) const;

  friend bool operator==(const BlockMap&, const BlockMap&) = default;

 private:
  Graph source_;
  Graph target_;
  unsigned l_ = 0;
  unsigned c_ = 0;
  BlockTable table_;
};

/// Throws ContractViolation naming the first missing path, a wrong-length or broken
/// image, or the first length-(2+l+c) path on which consecutive images do not meet.
BlockMap make_block_map(Graph source, Graph target, unsigned l, unsigned c, BlockTable table);

/// The (0,0) identity map on g.
BlockMap identity_block_map(const Graph& g);

/// The (0,N-1) map x_[0,N) -> x_[0,N) from g to its N'th higher block graph.
BlockMap higher_block_map(const Graph& g, std::size_t n);

/// Table on E-paths of length 1+l+c+i: psi(x_[0,l+c]) followed by the last edge of
/// psi(x_[t,t+l+c]) for t = 1..i.
BlockTable extend(const BlockMap& bm, unsigned i);

/// Image prefix h(x)_[0,|x|-c) of a finite prefix x with |x| >= 1+l+c.
Path apply_prefix(const BlockMap& bm, const Path& x);

struct SlidingReport {
  bool holds = true;
  unsigned depth = 0;
  std::optional<Path> counterexample;
  std::string detail;
};

/// For every E-path x of length `depth` (>= l+c+2): h(x) is an F-path and
/// h(x) without its first l+1 edges equals h(x_[1,..]) without its first l edges.
SlidingReport check_sliding(const BlockMap& bm, unsigned depth);

struct SurjectivityResult {
  unsigned k = 0;
  bool holds = false;
  /// An F-path of length 1+k without preimage, when one exists.
  std::optional<Path> missing;
};

struct InjectivityResult {
  unsigned k = 0;
  /// Smallest K at which paths with equal images of length 1+k+K-c agree on their
  /// first 1+k edges; empty when no K up to the bound works.
  std::optional<unsigned> min_k;
  unsigned bound = 0;
  /// Two paths of length 1+k+bound with the same image but different 1+k prefixes.
  std::optional<std::pair<Path, Path>> counterexample;
};

struct ConditionReport {
  unsigned k_max = 0;
  unsigned big_k_max = 0;
  std::vector<SurjectivityResult> surjectivity;
  std::vector<InjectivityResult> injectivity;

  bool surjective() const;
  bool injective() const;
  bool passes() const { return surjective() && injective(); }
};

/// Surjectivity and injectivity conditions for k = l..k_max, injectivity searched for
/// K up to big_k_max. Only the tested range is claimed.
ConditionReport check_conditions(const BlockMap& bm, unsigned k_max, unsigned big_k_max);

/// True when the table is a bijection from E^{1+l+c} onto F^{1+l}.
bool table_is_bijective(const BlockMap& bm);

/// (l+l', c+c')-block map inducing h' o h, for first: E -> F and second: F -> H.
BlockMap compose(const BlockMap& first, const BlockMap& second);

/// Swaps the E and F sides of every step.
SplitHistory swap_sides(const SplitHistory& h);

/// psi^(j): E_(j) -> F_(j) for j = 0..l, with psi^(0) the identity on the base.
/// psi^(j)(p) is the lift to F_(j) of extend(psi^(j-1), 1)(q(p)) whose first edge has the
/// same id as p's first edge. Throws ConsistencyError if a lift does not exist.
std::vector<BlockMap> psi_tower(const SplitHistory& h);

/// The top map of psi_tower, after checking compatibility, table bijectivity and the
/// intertwining identities. Requires at least one step.
BlockMap psi_from_history(const SplitHistory& h);

/// extend(psi^(j-1), 1) o q_E == q_F o psi^(j) on every E_(j)-path of length j+1, j = 1..l.
bool check_intertwining(const SplitHistory& h, const std::vector<BlockMap>& tower);

/// Canonical fixed bijections used to build a map from a balanced triple.
///
/// Auxiliary edges are numbered triples (from, to, copy) with copy < matrix entry. E-edges
/// from i to i' in id order are matched with the S,R_E-paths i -> k -> i' in
/// lexicographic (k, copy, copy') order; the same for F with R_F. Edges of the middle
/// graph (adjacency R_E S = R_F S, vertices 0..m-1) are numbered per vertex pair and
/// matched with R_E,S-paths and with R_F,S-paths in lexicographic order.
struct AuxEdge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::uint32_t copy = 0;
  friend auto operator<=>(const AuxEdge&, const AuxEdge&) = default;
};

struct MiddleEdge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::uint32_t copy = 0;
  AuxEdge r_e;  // R_E-edge from -> i
  AuxEdge s_e;  // S-edge i -> to
  AuxEdge r_f;
  AuxEdge s_f;
};

struct TriplePairing {
  /// Per E-edge index: (S-edge, R_E-edge).
  std::vector<std::pair<AuxEdge, AuxEdge>> e_edges;
  /// Per F-edge index: (S-edge, R_F-edge).
  std::vector<std::pair<AuxEdge, AuxEdge>> f_edges;
  std::vector<MiddleEdge> middle_edges;
};

struct TripleMap {
  BlockMap map;
  TriplePairing pairing;
};

/// (1,1)-block map E -> F from a balanced triple with A_E = S R_E and A_F = S R_F (in
/// the graphs' vertex order). Throws ContractViolation when the triple does not verify.
TripleMap block_map_from_triple(const Graph& e, const Graph& f, const BeeTriple& t);

struct ReducedMap {
  /// E^[c+1], whose edges are the (c+1)-paths of E.
  HigherBlockGraph bar;
  /// (l,0)-map on bar.
  BlockMap map;
  /// (0,c)-map E -> bar; compose(to_bar, map) reproduces the input table.
  BlockMap to_bar;
};

/// Moves the anticipation of an (l,c)-map into the source graph. c = 0 returns the map
/// unchanged with bar = E.
ReducedMap reduce_continuity(const BlockMap& bm);

}  // namespace evconj
