#include "evconj/graph.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

#include "evconj/errors.hpp"

namespace evconj {

Graph::Graph(std::vector<VertexId> vertices, std::vector<EdgeSpec> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::sort(vertices_.begin(), vertices_.end());
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    if (vertices_[i] == vertices_[i + 1]) {
      throw StructuralError("duplicate vertex id '" + vertices_[i] + "'");
    }
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
  for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
    if (edges_[i].id == edges_[i + 1].id) {
      throw StructuralError("duplicate edge id '" + edges_[i].id + "'");
    }
  }
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    vertex_lookup_.emplace(vertices_[v], static_cast<VertexIndex>(v));
  }
  out_.resize(vertices_.size());
  in_.resize(vertices_.size());
  src_.reserve(edges_.size());
  dst_.reserve(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& spec = edges_[e];
    auto s = vertex_lookup_.find(spec.src);
    auto d = vertex_lookup_.find(spec.dst);
    if (s == vertex_lookup_.end() || d == vertex_lookup_.end()) {
      const std::string& bad = s == vertex_lookup_.end() ? spec.src : spec.dst;
      throw StructuralError("edge '" + spec.id + "' has unknown endpoint '" + bad + "'");
    }
    src_.push_back(s->second);
    dst_.push_back(d->second);
    out_[s->second].push_back(static_cast<EdgeIndex>(e));
    in_[d->second].push_back(static_cast<EdgeIndex>(e));
    edge_lookup_.emplace(spec.id, static_cast<EdgeIndex>(e));
  }
}

std::optional<VertexIndex> Graph::find_vertex(std::string_view id) const {
  auto it = vertex_lookup_.find(std::string(id));
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> Graph::find_edge(std::string_view id) const {
  auto it = edge_lookup_.find(std::string(id));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

VertexIndex Graph::vertex_index(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw ContractViolation("unknown vertex '" + std::string(id) + "'");
}

EdgeIndex Graph::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw ContractViolation("unknown edge '" + std::string(id) + "'");
}

bool Graph::has_sinks() const {
  return std::any_of(out_.begin(), out_.end(), [](const auto& o) { return o.empty(); });
}

bool Graph::has_sources() const {
  return std::any_of(in_.begin(), in_.end(), [](const auto& i) { return i.empty(); });
}

ValidationReport validate_graph(const Graph& g) {
  ValidationReport report;
  report.vertex_count = g.vertex_count();
  report.edge_count = g.edge_count();
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (g.out_edges(v).empty()) report.sinks.push_back(g.vertex(v));
    if (g.in_edges(v).empty()) report.sources.push_back(g.vertex(v));
  }
  return report;
}

void require_no_sinks(const Graph& g, std::string_view what) {
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (g.out_edges(v).empty()) {
      throw ContractViolation(std::string(what) + ": vertex '" + g.vertex(v) +
                              "' is a sink");
    }
  }
}

bool is_path(const Graph& g, std::span<const EdgeIndex> p) {
  if (p.empty()) return false;
  for (EdgeIndex e : p) {
    if (e >= g.edge_count()) return false;
  }
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (g.dst(p[i]) != g.src(p[i + 1])) return false;
  }
  return true;
}

std::vector<Path> paths_of_length(const Graph& g, std::size_t n) {
  if (n == 0) {
    throw ContractViolation("paths_of_length: n must be at least 1 (length-0 paths are vertices)");
  }
  std::vector<Path> out;
  Path current;
  current.reserve(n);
  // Depth-first over out-edges; out_edges lists are in increasing index order, so the
  // output comes out lexicographically sorted.
  auto extend = [&](auto&& self, VertexIndex at) -> void {
    for (EdgeIndex e : g.out_edges(at)) {
      current.push_back(e);
      if (current.size() == n) {
        out.push_back(current);
      } else {
        self(self, g.dst(e));
      }
      current.pop_back();
    }
  };
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    current.push_back(e);
    if (n == 1) {
      out.push_back(current);
    } else {
      extend(extend, g.dst(e));
    }
    current.pop_back();
  }
  return out;
}

std::vector<EdgeId> path_ids(const Graph& g, std::span<const EdgeIndex> p) {
  std::vector<EdgeId> ids;
  ids.reserve(p.size());
  for (EdgeIndex e : p) ids.push_back(g.edge_id(e));
  return ids;
}

Path path_from_ids(const Graph& g, const std::vector<EdgeId>& ids) {
  Path p;
  p.reserve(ids.size());
  for (const auto& id : ids) p.push_back(g.edge_index(id));
  if (!is_path(g, p)) {
    std::string joined;
    for (const auto& id : ids) joined += (joined.empty() ? "" : " ") + id;
    throw ContractViolation("not a path: " + joined);
  }
  return p;
}

std::string join_path_ids(const Graph& g, std::span<const EdgeIndex> p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += g.edge_id(p[i]);
  }
  return s;
}

HigherBlockGraph higher_block_graph(const Graph& g, std::size_t n) {
  if (n == 0) throw ContractViolation("higher_block_graph: N must be at least 1");
  require_no_sinks(g, "higher_block_graph");
  HigherBlockGraph out;
  if (n == 1) {
    out.graph = g;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) out.edge_paths.push_back(Path{e});
    out.vertex_paths.assign(g.vertex_count(), Path{});
    return out;
  }
  const auto edge_paths = paths_of_length(g, n);
  const auto vertex_paths = paths_of_length(g, n - 1);
  std::vector<VertexId> vertices;
  vertices.reserve(vertex_paths.size());
  for (const auto& p : vertex_paths) vertices.push_back(join_path_ids(g, p));
  std::vector<EdgeSpec> edges;
  edges.reserve(edge_paths.size());
  for (const auto& p : edge_paths) {
    std::span<const EdgeIndex> whole(p);
    edges.push_back({join_path_ids(g, whole), join_path_ids(g, whole.first(n - 1)),
                     join_path_ids(g, whole.subspan(1))});
  }
  out.graph = Graph(std::move(vertices), std::move(edges));
  // Re-key the paths by the new graph's sorted indices.
  out.edge_paths.resize(edge_paths.size());
  for (const auto& p : edge_paths) {
    out.edge_paths[out.graph.edge_index(join_path_ids(g, p))] = p;
  }
  out.vertex_paths.resize(vertex_paths.size());
  for (const auto& p : vertex_paths) {
    out.vertex_paths[out.graph.vertex_index(join_path_ids(g, p))] = p;
  }
  return out;
}

NonNegMatrix adjacency_matrix(const Graph& g) {
  NonNegMatrix a(g.vertex_count(), g.vertex_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) a.add(g.src(e), g.dst(e), 1);
  return a;
}

NonNegMatrix adjacency_matrix(const Graph& g, const std::vector<VertexId>& ordering) {
  if (ordering.size() != g.vertex_count()) {
    throw ContractViolation("adjacency_matrix: ordering has " + std::to_string(ordering.size()) +
                            " entries for " + std::to_string(g.vertex_count()) + " vertices");
  }
  std::vector<std::size_t> position(g.vertex_count(), g.vertex_count());
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    VertexIndex v = g.vertex_index(ordering[i]);
    if (position[v] != g.vertex_count()) {
      throw ContractViolation("adjacency_matrix: vertex '" + ordering[i] + "' listed twice");
    }
    position[v] = i;
  }
  NonNegMatrix a(g.vertex_count(), g.vertex_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) a.add(position[g.src(e)], position[g.dst(e)], 1);
  return a;
}

namespace {

std::string padded(std::size_t value, std::size_t width) {
  std::ostringstream os;
  os << std::setw(static_cast<int>(width)) << std::setfill('0') << value;
  return os.str();
}

std::size_t digits(std::size_t n) {
  std::size_t d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

}  // namespace

std::vector<VertexId> matrix_vertex_ids(std::size_t n) {
  const std::size_t width = digits(n == 0 ? 0 : n - 1);
  std::vector<VertexId> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back("v" + padded(i, width));
  return ids;
}

Graph graph_from_matrix(const NonNegMatrix& a) {
  if (!a.is_square()) {
    throw DimensionError("graph_from_matrix: matrix is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", not square");
  }
  const std::size_t n = a.rows();
  const auto ids = matrix_vertex_ids(n);
  const std::size_t width = digits(n == 0 ? 0 : n - 1);
  const std::size_t mult_width = digits(static_cast<std::size_t>(a.max_entry() == 0 ? 0 : a.max_entry() - 1));
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto count = static_cast<std::size_t>(a(i, j));
      for (std::size_t k = 0; k < count; ++k) {
        edges.push_back({"e" + padded(i, width) + "_" + padded(j, width) + "_" +
                             padded(k, mult_width),
                         ids[i], ids[j]});
      }
    }
  }
  return Graph(ids, std::move(edges));
}

bool is_isomorphism(const Graph& g1, const Graph& g2, const VertexBijection& bijection) {
  const std::size_t n = g1.vertex_count();
  if (n != g2.vertex_count() || bijection.forward.size() != n || bijection.inverse.size() != n) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (bijection.forward[i] >= n || bijection.inverse[bijection.forward[i]] != i) return false;
  }
  const auto a1 = adjacency_matrix(g1);
  const auto a2 = adjacency_matrix(g2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a1(i, j) != a2(bijection.forward[i], bijection.forward[j])) return false;
  return true;
}

namespace {

// Cheap per-vertex invariant used to restrict candidate images.
struct VertexSignature {
  std::size_t loops = 0;
  std::vector<std::size_t> out_row;  // sorted multiplicities of nonzero row entries
  std::vector<std::size_t> in_col;   // sorted multiplicities of nonzero column entries

  friend bool operator==(const VertexSignature&, const VertexSignature&) = default;
};

std::vector<std::vector<std::size_t>> small_adjacency(const Graph& g) {
  std::vector<std::vector<std::size_t>> a(g.vertex_count(),
                                          std::vector<std::size_t>(g.vertex_count(), 0));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) ++a[g.src(e)][g.dst(e)];
  return a;
}

std::vector<VertexSignature> signatures(const std::vector<std::vector<std::size_t>>& a) {
  const std::size_t n = a.size();
  std::vector<VertexSignature> sig(n);
  for (std::size_t i = 0; i < n; ++i) {
    sig[i].loops = a[i][i];
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j]) sig[i].out_row.push_back(a[i][j]);
      if (a[j][i]) sig[i].in_col.push_back(a[j][i]);
    }
    std::sort(sig[i].out_row.begin(), sig[i].out_row.end());
    std::sort(sig[i].in_col.begin(), sig[i].in_col.end());
  }
  return sig;
}

}  // namespace

IsomorphismResult are_isomorphic(const Graph& g1, const Graph& g2, std::size_t vertex_cap) {
  IsomorphismResult result;
  const std::size_t n = g1.vertex_count();
  if (n != g2.vertex_count() || g1.edge_count() != g2.edge_count()) {
    result.status = IsoStatus::none;
    return result;
  }
  if (n > vertex_cap) {
    result.status = IsoStatus::bound_exceeded;
    return result;
  }
  const auto a1 = small_adjacency(g1);
  const auto a2 = small_adjacency(g2);
  const auto s1 = signatures(a1);
  const auto s2 = signatures(a2);

  std::vector<std::vector<VertexIndex>> candidates(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (s1[i] == s2[j]) candidates[i].push_back(static_cast<VertexIndex>(j));
    }
    if (candidates[i].empty()) {
      result.status = IsoStatus::none;
      return result;
    }
  }
  // Assign the most constrained vertices first.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return candidates[x].size() < candidates[y].size();
  });

  std::vector<VertexIndex> forward(n, 0);
  std::vector<bool> used(n, false);
  auto assign = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const std::size_t v = order[depth];
    for (VertexIndex w : candidates[v]) {
      if (used[w]) continue;
      bool ok = a1[v][v] == a2[w][w];
      for (std::size_t d = 0; ok && d < depth; ++d) {
        const std::size_t u = order[d];
        ok = a1[v][u] == a2[w][forward[u]] && a1[u][v] == a2[forward[u]][w];
      }
      if (!ok) continue;
      forward[v] = w;
      used[w] = true;
      if (self(self, depth + 1)) return true;
      used[w] = false;
    }
    return false;
  };
  if (!assign(assign, 0)) {
    result.status = IsoStatus::none;
    return result;
  }
  VertexBijection bijection;
  bijection.forward = forward;
  bijection.inverse.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) bijection.inverse[forward[i]] = static_cast<VertexIndex>(i);
  result.status = IsoStatus::found;
  result.bijection = std::move(bijection);
  return result;
}

namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_dot(const Graph& g, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << dot_quote(name) << " {\n";
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    os << "  " << dot_quote(g.vertex(v));
    if (g.out_edges(v).empty()) {
      os << " [shape=box]";
    } else if (g.in_edges(v).empty()) {
      os << " [shape=diamond]";
    }
    os << ";\n";
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    os << "  " << dot_quote(g.vertex(g.src(e))) << " -> " << dot_quote(g.vertex(g.dst(e)))
       << " [label=" << dot_quote(g.edge_id(e)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace evconj
