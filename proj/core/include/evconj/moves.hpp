#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "evconj/graph.hpp"
#include "evconj/intmat.hpp"

namespace evconj {

using Cells = std::vector<std::vector<EdgeId>>;

/// Partition of the edges leaving `vertex`; every cell must be nonempty.
struct OutPartition {
  VertexId vertex;
  Cells cells;
};

/// Partition of the edges entering `vertex`; empty cells are allowed and become sources.
struct InPartition {
  VertexId vertex;
  Cells cells;
};

enum class SplitKind { out, in };

/// Id of the k'th copy (1-based) of a vertex or edge: `v` -> `v#k`.
std::string copy_name(std::string_view id, unsigned k);

/// One out- or in-split together with its matrix factorization.
///
/// Out-split: A_source = D Em and A_result = Em D, with Em of shape |result| x |source|.
/// In-split:  A_source = Em D^t and A_result = D^t Em, with Em of shape |source| x |result|.
/// D is |source| x |result| with D(u, w) = 1 iff w is a copy of u. Rows and columns
/// follow the lexicographic vertex order of each graph.
struct SplitRecord {
  SplitKind kind = SplitKind::out;
  Graph source;
  VertexId vertex;
  Cells cells;
  Graph result;
  NonNegMatrix division;
  NonNegMatrix edge_matrix;
  /// For each result vertex: the source vertex it copies and its 1-based copy number.
  std::vector<VertexIndex> vertex_parent;
  std::vector<unsigned> vertex_copy;
  /// For each result edge: the source edge it copies and its 1-based copy number.
  std::vector<EdgeIndex> edge_parent;
  std::vector<unsigned> edge_copy;

  std::size_t cell_count() const { return cells.size(); }
  bool factorization_holds() const;
};

/// Move (O). Throws ContractViolation for sinks in `g`, unknown ids, or a partition
/// that is not a partition of the out-edges into nonempty cells.
SplitRecord out_split(const Graph& g, const OutPartition& p);

/// Move (I-). Throws ContractViolation for sinks in `g`, unknown ids, or a partition
/// that does not cover the in-edges exactly once.
SplitRecord in_split(const Graph& g, const InPartition& p);

/// Two in-splits of the same graph at the same vertex with equally many cells.
///
/// Both results use the same naming, so their vertex and edge id sets coincide and the
/// identification between them is the identity on ids. `triple` is
/// (R_E, S, R_F) = (Em_E, D^t, Em_F), which satisfies A_E = S R_E, A_F = S R_F and
/// R_E S = R_F S = A_g.
struct BalancedSplit {
  SplitRecord e;
  SplitRecord f;
  BeeTriple triple;
};

/// Throws ContractViolation when the cell counts differ or the vertices differ.
BalancedSplit balanced_in_split(const Graph& g, const InPartition& pe, const InPartition& pf);

struct SplitStep {
  VertexId vertex;
  Cells cells_e;
  Cells cells_f;
};

/// Replayable iterated balanced in-split: step i splits E_(i) and F_(i) at `vertex`.
struct SplitScript {
  Graph base;
  std::vector<SplitStep> steps;
};

struct SplitHistory {
  Graph base;
  std::vector<BalancedSplit> steps;

  std::size_t length() const { return steps.size(); }
  /// E_(i) and F_(i) for i = 0..length().
  const Graph& e_graph(std::size_t i) const { return i == 0 ? base : steps[i - 1].e.result; }
  const Graph& f_graph(std::size_t i) const { return i == 0 ? base : steps[i - 1].f.result; }
  const Graph& e_final() const { return e_graph(length()); }
  const Graph& f_final() const { return f_graph(length()); }
};

/// Replays a script. Errors are prefixed with the failing step number.
SplitHistory iterated_balanced_in_split(const SplitScript& script);

/// Reconstructs a single split from its factorization matrices. D must be a division
/// matrix with at most one row holding more than one 1 (one split vertex); when every
/// row has a single 1 the first vertex is "split" into one cell. Edges are assigned to
/// cells in id order. Throws ContractViolation showing the residual when the
/// factorization identity for `kind` fails.
SplitRecord matrices_to_split(const Graph& g, const NonNegMatrix& d, const NonNegMatrix& em,
                              SplitKind kind);

/// One link of the chain joining E_(l) to F_(l): an elementary balanced in-split of
/// `split.e.source` whose two sides are `split.e.result` and `split.f.result`.
/// `order` lists the shared vertex ids of both sides in the order used by `a`, `b` and
/// `triple`, chosen so that each link's `b` equals the next link's `a`.
struct ChainLink {
  std::string label;
  BalancedSplit split;
  std::vector<VertexId> order;
  NonNegMatrix a;
  NonNegMatrix b;
  BeeTriple triple;
};

struct ElementaryChain {
  std::vector<ChainLink> links;
  /// The common base of the middle link (G with sources attached).
  Graph g_prime;
  std::size_t attached_sources = 0;

  BsseCertificate certificate() const;
};

/// Connects the two ends of an l-step script (l >= 2) by 2l - 1 elementary balanced
/// in-splits, attaching sources to the intermediate bases. Every link is verified and
/// consecutive links are matched by an explicit vertex bijection; a mismatch throws
/// ConsistencyError.
ElementaryChain connect_by_elementary(const SplitScript& script);

}  // namespace evconj
