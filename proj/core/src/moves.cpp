#include "evconj/moves.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "evconj/errors.hpp"

namespace evconj {

std::string copy_name(std::string_view id, unsigned k) {
  std::string out(id);
  out += '#';
  out += std::to_string(k);
  return out;
}

namespace {

// cell_of[e] = 1-based cell of edge e (0 for edges outside the star).
std::vector<unsigned> cell_assignment(const Graph& g, VertexIndex v, const Cells& cells,
                                      bool outgoing, const char* what) {
  if (cells.empty()) throw ContractViolation(std::string(what) + ": partition needs at least one cell");
  std::vector<unsigned> cell_of(g.edge_count(), 0);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (const auto& id : cells[c]) {
      const auto e = g.find_edge(id);
      if (!e) throw ContractViolation(std::string(what) + ": unknown edge '" + id + "' in cell " + std::to_string(c + 1));
      const VertexIndex end = outgoing ? g.src(*e) : g.dst(*e);
      if (end != v) {
        throw ContractViolation(std::string(what) + ": edge '" + id + "' does not " +
                                (outgoing ? "leave" : "enter") + " vertex '" + g.vertex(v) + "'");
      }
      if (cell_of[*e] != 0) throw ContractViolation(std::string(what) + ": edge '" + id + "' appears twice");
      cell_of[*e] = static_cast<unsigned>(c + 1);
    }
  }
  const auto star = outgoing ? g.out_edges(v) : g.in_edges(v);
  for (EdgeIndex e : star) {
    if (cell_of[e] == 0) {
      throw ContractViolation(std::string(what) + ": edge '" + g.edge_id(e) + "' is in no cell");
    }
  }
  return cell_of;
}

struct RawEdge {
  EdgeSpec spec;
  EdgeIndex parent;
  unsigned copy;
};

SplitRecord assemble(SplitKind kind, const Graph& g, VertexIndex v, const Cells& cells,
                     const std::vector<RawEdge>& raw) {
  const auto n = static_cast<unsigned>(cells.size());
  SplitRecord rec;
  rec.kind = kind;
  rec.source = g;
  rec.vertex = g.vertex(v);
  rec.cells = cells;

  std::vector<VertexId> vertex_ids;
  std::vector<std::pair<VertexIndex, unsigned>> vertex_origin;
  for (VertexIndex u = 0; u < g.vertex_count(); ++u) {
    const unsigned copies = u == v ? n : 1;
    for (unsigned k = 1; k <= copies; ++k) {
      vertex_ids.push_back(copy_name(g.vertex(u), k));
      vertex_origin.emplace_back(u, k);
    }
  }
  std::vector<EdgeSpec> specs;
  specs.reserve(raw.size());
  for (const auto& r : raw) specs.push_back(r.spec);
  rec.result = Graph(vertex_ids, specs);

  const Graph& h = rec.result;
  rec.vertex_parent.resize(h.vertex_count());
  rec.vertex_copy.resize(h.vertex_count());
  for (std::size_t i = 0; i < vertex_ids.size(); ++i) {
    const VertexIndex w = h.vertex_index(vertex_ids[i]);
    rec.vertex_parent[w] = vertex_origin[i].first;
    rec.vertex_copy[w] = vertex_origin[i].second;
  }
  rec.edge_parent.resize(h.edge_count());
  rec.edge_copy.resize(h.edge_count());
  for (const auto& r : raw) {
    const EdgeIndex e = h.edge_index(r.spec.id);
    rec.edge_parent[e] = r.parent;
    rec.edge_copy[e] = r.copy;
  }

  rec.division = NonNegMatrix(g.vertex_count(), h.vertex_count());
  for (VertexIndex w = 0; w < h.vertex_count(); ++w) rec.division.set(rec.vertex_parent[w], w, 1);

  if (kind == SplitKind::out) {
    // Em(w, u'): edges of g leaving the cell w and entering u'.
    rec.edge_matrix = NonNegMatrix(h.vertex_count(), g.vertex_count());
    for (EdgeIndex e = 0; e < h.edge_count(); ++e) {
      if (rec.edge_copy[e] != 1) continue;
      rec.edge_matrix.add(h.src(e), g.dst(rec.edge_parent[e]), 1);
    }
  } else {
    // Em(u, w): edges of g leaving u and entering the cell w.
    rec.edge_matrix = NonNegMatrix(g.vertex_count(), h.vertex_count());
    for (EdgeIndex e = 0; e < h.edge_count(); ++e) {
      if (rec.edge_copy[e] != 1) continue;
      rec.edge_matrix.add(g.src(rec.edge_parent[e]), h.dst(e), 1);
    }
  }
  if (!rec.factorization_holds()) {
    throw ConsistencyError("split at '" + rec.vertex + "': factorization identities fail");
  }
  return rec;
}

}  // namespace

bool SplitRecord::factorization_holds() const {
  const NonNegMatrix a_src = adjacency_matrix(source);
  const NonNegMatrix a_res = adjacency_matrix(result);
  if (kind == SplitKind::out) {
    return division * edge_matrix == a_src && edge_matrix * division == a_res;
  }
  const NonNegMatrix dt = division.transpose();
  return edge_matrix * dt == a_src && dt * edge_matrix == a_res;
}

SplitRecord out_split(const Graph& g, const OutPartition& p) {
  require_no_sinks(g, "out_split");
  const VertexIndex v = g.vertex_index(p.vertex);
  const auto cell_of = cell_assignment(g, v, p.cells, true, "out_split");
  for (std::size_t c = 0; c < p.cells.size(); ++c) {
    if (p.cells[c].empty()) {
      throw ContractViolation("out_split: cell " + std::to_string(c + 1) + " is empty (out-split cells must be nonempty)");
    }
  }
  const auto n = static_cast<unsigned>(p.cells.size());
  std::vector<RawEdge> raw;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const VertexIndex s = g.src(e);
    const VertexIndex r = g.dst(e);
    const unsigned copies = r == v ? n : 1;
    const VertexId src = s == v ? copy_name(g.vertex(v), cell_of[e]) : copy_name(g.vertex(s), 1);
    for (unsigned i = 1; i <= copies; ++i) {
      raw.push_back({{copy_name(g.edge_id(e), i), src, copy_name(g.vertex(r), i)}, e, i});
    }
  }
  return assemble(SplitKind::out, g, v, p.cells, raw);
}

SplitRecord in_split(const Graph& g, const InPartition& p) {
  require_no_sinks(g, "in_split");
  const VertexIndex v = g.vertex_index(p.vertex);
  const auto cell_of = cell_assignment(g, v, p.cells, false, "in_split");
  const auto n = static_cast<unsigned>(p.cells.size());
  std::vector<RawEdge> raw;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const VertexIndex s = g.src(e);
    const VertexIndex r = g.dst(e);
    const unsigned copies = s == v ? n : 1;
    const VertexId dst = r == v ? copy_name(g.vertex(v), cell_of[e]) : copy_name(g.vertex(r), 1);
    for (unsigned i = 1; i <= copies; ++i) {
      raw.push_back({{copy_name(g.edge_id(e), i), copy_name(g.vertex(s), i), dst}, e, i});
    }
  }
  return assemble(SplitKind::in, g, v, p.cells, raw);
}

BalancedSplit balanced_in_split(const Graph& g, const InPartition& pe, const InPartition& pf) {
  if (pe.vertex != pf.vertex) {
    throw ContractViolation("balanced_in_split: partitions are at different vertices ('" + pe.vertex +
                            "' and '" + pf.vertex + "')");
  }
  if (pe.cells.size() != pf.cells.size()) {
    throw ContractViolation("balanced_in_split: cell counts differ (" + std::to_string(pe.cells.size()) +
                            " and " + std::to_string(pf.cells.size()) + ")");
  }
  BalancedSplit out{in_split(g, pe), in_split(g, pf), {}};
  out.triple = BeeTriple{out.e.edge_matrix, out.e.division.transpose(), out.f.edge_matrix};
  if (out.e.result.vertices() != out.f.result.vertices() || out.e.division != out.f.division) {
    throw ConsistencyError("balanced_in_split: the two sides disagree on vertices");
  }
  return out;
}

SplitHistory iterated_balanced_in_split(const SplitScript& script) {
  SplitHistory h;
  h.base = script.base;
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const SplitStep& st = script.steps[i];
    const Graph& e = h.e_graph(i);
    const Graph& f = h.f_graph(i);
    const std::string where = "step " + std::to_string(i + 1) + ": ";
    if (!e.find_vertex(st.vertex) || !f.find_vertex(st.vertex)) {
      throw ContractViolation(where + "vertex '" + st.vertex + "' does not exist in both branches");
    }
    if (st.cells_e.size() != st.cells_f.size()) {
      throw ContractViolation(where + "cell counts differ (" + std::to_string(st.cells_e.size()) + " and " +
                              std::to_string(st.cells_f.size()) + ")");
    }
    try {
      BalancedSplit bs{in_split(e, {st.vertex, st.cells_e}), in_split(f, {st.vertex, st.cells_f}), {}};
      bs.triple = BeeTriple{bs.e.edge_matrix, bs.e.division.transpose(), bs.f.edge_matrix};
      h.steps.push_back(std::move(bs));
    } catch (const ContractViolation& err) {
      throw ContractViolation(where + err.what());
    }
  }
  return h;
}

SplitRecord matrices_to_split(const Graph& g, const NonNegMatrix& d, const NonNegMatrix& em,
                              SplitKind kind) {
  require_no_sinks(g, "matrices_to_split");
  const std::size_t n = g.vertex_count();
  if (d.rows() != n) {
    throw DimensionError("matrices_to_split: D has " + std::to_string(d.rows()) + " rows, graph has " +
                         std::to_string(n) + " vertices");
  }
  if (!is_division_matrix(d)) throw ContractViolation("matrices_to_split: D is not a division matrix");
  const std::size_t k = d.cols();
  const bool out = kind == SplitKind::out;
  if ((out && (em.rows() != k || em.cols() != n)) || (!out && (em.rows() != n || em.cols() != k))) {
    throw DimensionError("matrices_to_split: edge matrix has shape " + std::to_string(em.rows()) + "x" +
                         std::to_string(em.cols()) + ", expected " +
                         (out ? std::to_string(k) + "x" + std::to_string(n)
                              : std::to_string(n) + "x" + std::to_string(k)));
  }
  const NonNegMatrix a = adjacency_matrix(g);
  const NonNegMatrix product = out ? d * em : em * d.transpose();
  if (product != a) {
    throw ContractViolation(std::string("matrices_to_split: ") + (out ? "D Em" : "Em D^t") +
                            " differs from A; residual (product - A) = " + signed_difference(product, a));
  }
  std::optional<VertexIndex> split;
  for (VertexIndex u = 0; u < n; ++u) {
    Integer ones = 0;
    for (std::size_t c = 0; c < k; ++c) ones += d(u, c);
    if (ones > 1) {
      if (split) throw ContractViolation("matrices_to_split: D splits more than one vertex");
      split = u;
    }
  }
  const VertexIndex v = split.value_or(0);
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < k; ++c)
    if (d(v, c) == 1) cols.push_back(c);

  Cells cells(cols.size());
  for (VertexIndex u = 0; u < n; ++u) {
    // Edges v -> u (out) or u -> v (in), in id order, dealt to cells by the counts in Em.
    std::vector<EdgeIndex> bundle;
    for (EdgeIndex e : out ? g.out_edges(v) : g.in_edges(v)) {
      if ((out ? g.dst(e) : g.src(e)) == u) bundle.push_back(e);
    }
    std::sort(bundle.begin(), bundle.end());
    std::size_t next = 0;
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
      const Integer& count = out ? em(cols[ci], u) : em(u, cols[ci]);
      for (Integer t = 0; t < count; ++t) cells[ci].push_back(g.edge_id(bundle[next++]));
    }
  }
  for (auto& c : cells) std::sort(c.begin(), c.end());
  if (out) return out_split(g, {g.vertex(v), cells});
  return in_split(g, {g.vertex(v), cells});
}

}  // namespace evconj
