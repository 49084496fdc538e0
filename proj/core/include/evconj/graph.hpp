#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "evconj/matrix.hpp"

namespace evconj {

using VertexId = std::string;
using EdgeId = std::string;

/// Index of an edge inside a particular Graph (position in its sorted edge list).
using EdgeIndex = std::uint32_t;
/// Index of a vertex inside a particular Graph (position in its sorted vertex list).
using VertexIndex = std::uint32_t;

/// A finite path, stored as consecutive edge indices of one graph.
using Path = std::vector<EdgeIndex>;

struct EdgeSpec {
  EdgeId id;
  VertexId src;
  VertexId dst;

  friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

/// Finite directed multigraph with named vertices and edges.
///
/// Vertices and edges are kept in lexicographic id order; that order defines the
/// indices used by paths, adjacency matrices and search traces. Parallel edges and
/// loops are allowed. Sinks and sources are representable; operations that need a
/// sink-free graph check for it themselves.
class Graph {
 public:
  Graph() = default;
  /// Throws StructuralError on duplicate ids or on an edge whose endpoint is unknown.
  Graph(std::vector<VertexId> vertices, std::vector<EdgeSpec> edges);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const VertexId& vertex(VertexIndex v) const { return vertices_[v]; }
  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  const EdgeId& edge_id(EdgeIndex e) const { return edges_[e].id; }
  const std::vector<EdgeSpec>& edges() const noexcept { return edges_; }

  VertexIndex src(EdgeIndex e) const { return src_[e]; }
  VertexIndex dst(EdgeIndex e) const { return dst_[e]; }
  std::span<const EdgeIndex> out_edges(VertexIndex v) const { return out_[v]; }
  std::span<const EdgeIndex> in_edges(VertexIndex v) const { return in_[v]; }

  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;
  /// Like find_* but throws ContractViolation naming the missing id.
  VertexIndex vertex_index(std::string_view id) const;
  EdgeIndex edge_index(std::string_view id) const;

  bool has_sinks() const;
  bool has_sources() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<VertexId> vertices_;
  std::vector<EdgeSpec> edges_;
  std::vector<VertexIndex> src_;
  std::vector<VertexIndex> dst_;
  std::vector<std::vector<EdgeIndex>> out_;
  std::vector<std::vector<EdgeIndex>> in_;
  std::unordered_map<std::string, VertexIndex> vertex_lookup_;
  std::unordered_map<std::string, EdgeIndex> edge_lookup_;
};

struct ValidationReport {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::vector<VertexId> sinks;
  std::vector<VertexId> sources;

  bool has_sinks() const noexcept { return !sinks.empty(); }
  bool has_sources() const noexcept { return !sources.empty(); }
};

ValidationReport validate_graph(const Graph& g);

/// Throws ContractViolation naming the first sink; `what` prefixes the message.
void require_no_sinks(const Graph& g, std::string_view what);

/// True when consecutive edges of `p` meet (dst of one is src of the next).
bool is_path(const Graph& g, std::span<const EdgeIndex> p);

/// All paths with exactly n edges, in lexicographic order of edge indices. n must be >= 1.
std::vector<Path> paths_of_length(const Graph& g, std::size_t n);

/// Edge ids of a path, in order.
std::vector<EdgeId> path_ids(const Graph& g, std::span<const EdgeIndex> p);
/// Inverse of path_ids; throws ContractViolation for unknown ids or broken paths.
Path path_from_ids(const Graph& g, const std::vector<EdgeId>& ids);
/// Ids joined with '.', the naming used for higher block graphs.
std::string join_path_ids(const Graph& g, std::span<const EdgeIndex> p);

struct HigherBlockGraph {
  Graph graph;
  /// For each edge of `graph` (by index), the path of length N in the original graph.
  std::vector<Path> edge_paths;
  /// For each vertex of `graph` (by index), the path of length N-1 (empty when N = 1).
  std::vector<Path> vertex_paths;
};

/// N'th higher block graph: vertices are (N-1)-paths, edges N-paths, joined by overlap.
/// N = 1 returns g itself. Requires N >= 1 and no sinks.
HigherBlockGraph higher_block_graph(const Graph& g, std::size_t n);

/// Adjacency matrix in the graph's own (lexicographic) vertex order.
NonNegMatrix adjacency_matrix(const Graph& g);
/// Adjacency matrix in a caller-chosen order, which must be a permutation of the vertices.
NonNegMatrix adjacency_matrix(const Graph& g, const std::vector<VertexId>& ordering);

/// Graph realizing a square matrix, with vertex ids `v0..` and edge ids `e<i>_<j>_<k>`
/// (zero-padded so lexicographic order equals numeric order).
Graph graph_from_matrix(const NonNegMatrix& a);
/// Vertex ids graph_from_matrix assigns to an n x n matrix.
std::vector<VertexId> matrix_vertex_ids(std::size_t n);

/// Vertex bijection between two graphs, in index form.
struct VertexBijection {
  std::vector<VertexIndex> forward;
  std::vector<VertexIndex> inverse;

  VertexBijection inverted() const { return {inverse, forward}; }
};

enum class IsoStatus { found, none, bound_exceeded };

struct IsomorphismResult {
  IsoStatus status = IsoStatus::none;
  std::optional<VertexBijection> bijection;
};

/// Default vertex cap for isomorphism search.
inline constexpr std::size_t kIsoVertexCap = 12;

/// Pruned exhaustive search for a vertex bijection that preserves edge multiplicities.
/// Exponential in the worst case; graphs above `vertex_cap` vertices report
/// IsoStatus::bound_exceeded without searching.
IsomorphismResult are_isomorphic(const Graph& g1, const Graph& g2,
                                 std::size_t vertex_cap = kIsoVertexCap);

/// True when `bijection` maps A_g1 onto A_g2 entry for entry.
bool is_isomorphism(const Graph& g1, const Graph& g2, const VertexBijection& bijection);

/// DOT rendering: one node per vertex, one arrow per edge labelled by its id; sources
/// are drawn as diamonds and sinks as boxes.
std::string to_dot(const Graph& g, std::string_view name = "G");

}  // namespace evconj
