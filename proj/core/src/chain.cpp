#include <algorithm>
#include <map>

#include "evconj/errors.hpp"
#include "evconj/moves.hpp"

namespace evconj {

namespace {

struct Attached {
  unsigned level = 0;  // step whose split created the source
  unsigned copy = 0;   // copy number (>= 2) of that step's vertex
};

// One side (E or F) of an iterated split, with the primed graphs derived from it.
class Side {
 public:
  Side(const SplitHistory& h, const SplitScript& script, bool is_e)
      : h_(h), script_(script), is_e_(is_e), len_(h.length()) {}

  const Graph& graph(std::size_t t) const { return is_e_ ? h_.e_graph(t) : h_.f_graph(t); }
  const SplitRecord& record(std::size_t t) const { return is_e_ ? h_.steps[t].e : h_.steps[t].f; }
  const Cells& cells(std::size_t t) const {
    return is_e_ ? script_.steps[t].cells_e : script_.steps[t].cells_f;
  }
  VertexIndex split_vertex(std::size_t t) const { return graph(t).vertex_index(script_.steps[t].vertex); }

  // Vertex of graph(t) pushed down to graph(j), j <= t.
  VertexIndex project(VertexIndex v, std::size_t t, std::size_t j) const {
    while (t > j) {
      --t;
      v = record(t).vertex_parent[v];
    }
    return v;
  }

  // graph(j) with one source per extra copy of every later split vertex (levels j+1..l-1).
  struct Primed {
    Graph graph;
    std::map<VertexId, Attached> attached;
    Cells cells;  // cells of the split at step j, extended by the attached edges
  };

  Primed primed(std::size_t j) const {
    const Graph& base = graph(j);
    std::vector<VertexId> vertices = base.vertices();
    std::vector<EdgeSpec> edges = base.edges();
    Primed out;
    out.cells = cells(j);
    const VertexIndex vj = split_vertex(j);
    for (std::size_t t = j + 1; t < len_; ++t) {
      const Graph& gt = graph(t);
      const VertexIndex vt = split_vertex(t);
      const auto n = static_cast<unsigned>(cells(t).size());
      for (unsigned k = 2; k <= n; ++k) {
        const VertexId src = copy_name(gt.vertex(vt), k);
        vertices.push_back(src);
        out.attached.emplace(src, Attached{static_cast<unsigned>(t), k});
        for (EdgeIndex e : gt.out_edges(vt)) {
          const VertexIndex range = project(gt.dst(e), t, j);
          const EdgeId id = copy_name(gt.edge_id(e), k);
          edges.push_back({id, src, base.vertex(range)});
          if (range == vj) {
            const VertexIndex above = project(gt.dst(e), t, j + 1);
            out.cells[record(j).vertex_copy[above] - 1].push_back(id);
          }
        }
      }
    }
    for (auto& c : out.cells) std::sort(c.begin(), c.end());
    out.graph = Graph(std::move(vertices), std::move(edges));
    return out;
  }

  Cells all_in_first(const Graph& g, std::size_t j) const {
    Cells c(cells(j).size());
    const VertexIndex v = g.vertex_index(script_.steps[j].vertex);
    for (EdgeIndex e : g.in_edges(v)) c[0].push_back(g.edge_id(e));
    std::sort(c[0].begin(), c[0].end());
    return c;
  }

  // Identifies the split of primed(j) by the extended cells (x) with the all-in-first
  // split of primed(j+1) (y): returns, per vertex of x, the matching vertex id of y.
  std::vector<VertexId> identify(const Primed& pj, const SplitRecord& x, const Graph& y, std::size_t j) const {
    std::vector<VertexId> image(x.result.vertex_count());
    const Graph& gj = graph(j);
    for (VertexIndex w = 0; w < x.result.vertex_count(); ++w) {
      const VertexId& parent = x.source.vertex(x.vertex_parent[w]);
      const unsigned copy = x.vertex_copy[w];
      auto it = pj.attached.find(parent);
      if (it == pj.attached.end()) {
        (void)gj.vertex_index(parent);
        image[w] = copy_name(copy_name(parent, copy), 1);
      } else if (it->second.level == j + 1) {
        image[w] = parent;
      } else {
        image[w] = copy_name(parent, 1);
      }
    }
    std::vector<VertexId> sorted = image;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != y.vertices()) {
      throw ConsistencyError("connect_by_elementary: vertex identification at level " + std::to_string(j) +
                             " is not a bijection");
    }
    if (adjacency_matrix(x.result) != adjacency_matrix(y, image)) {
      throw ConsistencyError("connect_by_elementary: graphs at level " + std::to_string(j) +
                             " differ under the vertex identification");
    }
    return image;
  }

 private:
  const SplitHistory& h_;
  const SplitScript& script_;
  bool is_e_;
  std::size_t len_;
};

BeeTriple reorder(const BalancedSplit& s, const std::vector<VertexId>& order) {
  const Graph& g = s.e.result;
  const std::size_t n = order.size();
  const std::size_t m = s.triple.s.cols();
  NonNegMatrix sm(n, m), ra(m, n), rb(m, n);
  for (std::size_t i = 0; i < n; ++i) {
    const VertexIndex w = g.vertex_index(order[i]);
    for (std::size_t k = 0; k < m; ++k) {
      sm.set(i, k, s.triple.s(w, k));
      ra.set(k, i, s.triple.r_a(k, w));
      rb.set(k, i, s.triple.r_b(k, w));
    }
  }
  return {ra, sm, rb};
}

}  // namespace

BsseCertificate ElementaryChain::certificate() const {
  BsseCertificate c;
  if (links.empty()) return c;
  c.matrices.push_back(links.front().a);
  for (const auto& l : links) {
    c.matrices.push_back(l.b);
    c.links.push_back(l.triple);
  }
  return c;
}

ElementaryChain connect_by_elementary(const SplitScript& script) {
  const std::size_t len = script.steps.size();
  if (len < 2) {
    throw ContractViolation("connect_by_elementary: needs a script with at least 2 steps (got " +
                            std::to_string(len) + ")");
  }
  const SplitHistory h = iterated_balanced_in_split(script);
  const Side sides[2] = {Side(h, script, true), Side(h, script, false)};
  const std::string names[2] = {"E", "F"};

  ElementaryChain chain;
  std::vector<Side::Primed> primed[2];
  for (int s = 0; s < 2; ++s)
    for (std::size_t j = 0; j < len; ++j) primed[s].push_back(sides[s].primed(j));
  if (!(primed[0][0].graph == primed[1][0].graph)) {
    throw ConsistencyError("connect_by_elementary: the E and F sides build different base graphs");
  }
  chain.g_prime = primed[0][0].graph;
  chain.attached_sources = primed[0][0].attached.size();

  auto level = [](std::size_t a, std::size_t b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  };
  const VertexId& v0 = script.steps[0].vertex;

  // splits[s][j]: the link over the primed graph at level j on side s (j = 0 is shared).
  std::vector<BalancedSplit> e_links, f_links;
  for (std::size_t j = len - 1; j >= 1; --j) {
    const auto& p = primed[0][j];
    e_links.push_back(balanced_in_split(p.graph, {script.steps[j].vertex, p.cells},
                                        {script.steps[j].vertex, sides[0].all_in_first(p.graph, j)}));
  }
  const BalancedSplit middle =
      balanced_in_split(chain.g_prime, {v0, primed[0][0].cells}, {v0, primed[1][0].cells});
  for (std::size_t j = 1; j < len; ++j) {
    const auto& p = primed[1][j];
    f_links.push_back(balanced_in_split(p.graph, {script.steps[j].vertex, sides[1].all_in_first(p.graph, j)},
                                        {script.steps[j].vertex, p.cells}));
  }

  std::vector<VertexId> order = e_links.front().e.result.vertices();
  auto push = [&](const BalancedSplit& s, std::string label) {
    ChainLink link;
    link.label = std::move(label);
    link.split = s;
    link.order = order;
    link.triple = reorder(s, order);
    link.a = link.triple.s * link.triple.r_a;
    link.b = link.triple.s * link.triple.r_b;
    if (!verify_balanced_elementary(link.a, link.b, link.triple)) {
      throw ConsistencyError("connect_by_elementary: link '" + link.label + "' does not verify");
    }
    if (!chain.links.empty() && chain.links.back().b != link.a) {
      throw ConsistencyError("connect_by_elementary: link '" + link.label + "' does not continue the chain");
    }
    chain.links.push_back(std::move(link));
  };
  // Re-express `order` (vertices of y) in the vertices of x, given image[x-vertex] = y id.
  auto pull_back = [&](const Graph& x, const std::vector<VertexId>& image) {
    std::map<VertexId, VertexId> inv;
    for (VertexIndex w = 0; w < x.vertex_count(); ++w) inv.emplace(image[w], x.vertex(w));
    for (auto& id : order) id = inv.at(id);
  };
  auto push_forward = [&](const Graph& x, const std::vector<VertexId>& image) {
    for (auto& id : order) id = image[x.vertex_index(id)];
  };

  for (std::size_t i = 0; i < e_links.size(); ++i) {
    const std::size_t j = len - 1 - i;
    const std::string a = j == len - 1 ? "E_(" + std::to_string(len) + ")" : "E_" + level(j + 1, j);
    const std::string base = j == len - 1 ? "E_(" + std::to_string(j) + ")" : "E_(" + std::to_string(j) + ")'";
    push(e_links[i], a + " ~ E_" + level(j, j - 1) + " over " + base);
    // Next link's A side is the split of the level j-1 primed graph, identified with our B side.
    const SplitRecord& next_a = j >= 2 ? e_links[i + 1].e : middle.e;
    pull_back(next_a.result, sides[0].identify(primed[0][j - 1], next_a, e_links[i].f.result, j - 1));
  }
  push(middle, "E_" + level(1, 0) + " ~ F_" + level(1, 0) + " over G'");
  for (std::size_t i = 0; i < f_links.size(); ++i) {
    const std::size_t j = i + 1;
    const SplitRecord& prev_b = j == 1 ? middle.f : f_links[i - 1].f;
    push_forward(prev_b.result, sides[1].identify(primed[1][j - 1], prev_b, f_links[i].e.result, j - 1));
    const std::string b = j == len - 1 ? "F_(" + std::to_string(len) + ")" : "F_" + level(j + 1, j);
    const std::string base = j == len - 1 ? "F_(" + std::to_string(j) + ")" : "F_(" + std::to_string(j) + ")'";
    push(f_links[i], "F_" + level(j, j - 1) + " ~ " + b + " over " + base);
  }
  return chain;
}

}  // namespace evconj
