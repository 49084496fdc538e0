#include "evconj/decompose.hpp"

#include <algorithm>
#include <map>

#include "evconj/errors.hpp"

namespace evconj {

namespace {

struct PairSeq {
  Path x;
  Path y;
};

// Inclusive position ranges of the two windows.
struct Window {
  std::size_t x_from, x_to, y_from, y_to;
};

Path cut(const Path& p, std::size_t from, std::size_t to) {
  return Path(p.begin() + static_cast<std::ptrdiff_t>(from), p.begin() + static_cast<std::ptrdiff_t>(to + 1));
}

std::string pair_id(const Graph& e, const Graph& f, const Path& x, const Path& y) {
  return join_path_ids(e, x) + "|" + join_path_ids(f, y);
}

WindowGraph build(const std::vector<PairSeq>& seqs, Window w, const Graph& e, const Graph& f) {
  using Key = std::pair<Path, Path>;
  std::map<Key, std::string> vertex_ids;
  std::map<std::string, std::pair<std::string, std::string>> edge_ends;
  for (const auto& s : seqs) {
    Key here{cut(s.x, w.x_from, w.x_to), cut(s.y, w.y_from, w.y_to)};
    vertex_ids.emplace(here, pair_id(e, f, here.first, here.second));
  }
  for (const auto& s : seqs) {
    Key here{cut(s.x, w.x_from, w.x_to), cut(s.y, w.y_from, w.y_to)};
    Key next{cut(s.x, w.x_from + 1, w.x_to + 1), cut(s.y, w.y_from + 1, w.y_to + 1)};
    auto it = vertex_ids.find(next);
    if (it == vertex_ids.end()) {
      throw ContractViolation("decompose: shifted window pair " + pair_id(e, f, next.first, next.second) +
                              " is not realizable; h is not an eventual conjugacy with this lag");
    }
    const std::string id = pair_id(e, f, cut(s.x, w.x_from, w.x_to + 1), cut(s.y, w.y_from, w.y_to + 1));
    edge_ends.emplace(id, std::make_pair(vertex_ids.at(here), it->second));
  }
  std::vector<VertexId> vs;
  for (const auto& [k, id] : vertex_ids) vs.push_back(id);
  std::vector<EdgeSpec> es;
  for (const auto& [id, ends] : edge_ends) es.push_back({id, ends.first, ends.second});
  WindowGraph out;
  out.graph = Graph(std::move(vs), std::move(es));
  out.windows.resize(out.graph.vertex_count());
  for (const auto& [k, id] : vertex_ids) out.windows[out.graph.vertex_index(id)] = k;
  return out;
}

// Projection of `upper` onto `lower` by trimming windows; throws if a trimmed window is absent.
std::vector<VertexIndex> projection(const WindowGraph& upper, const WindowGraph& lower, std::size_t x_front,
                                    std::size_t x_back, std::size_t y_front, std::size_t y_back) {
  std::map<std::pair<Path, Path>, VertexIndex> index;
  for (VertexIndex v = 0; v < lower.windows.size(); ++v) index.emplace(lower.windows[v], v);
  std::vector<VertexIndex> pi;
  for (const auto& [x, y] : upper.windows) {
    Path px(x.begin() + static_cast<std::ptrdiff_t>(x_front), x.end() - static_cast<std::ptrdiff_t>(x_back));
    Path py(y.begin() + static_cast<std::ptrdiff_t>(y_front), y.end() - static_cast<std::ptrdiff_t>(y_back));
    auto it = index.find({px, py});
    if (it == index.end()) throw ConsistencyError("decompose: ladder vertex has no projection");
    pi.push_back(it->second);
  }
  return pi;
}

NonNegMatrix division_of(std::size_t g_count, const std::vector<VertexIndex>& pi) {
  NonNegMatrix d(g_count, pi.size());
  for (std::size_t w = 0; w < pi.size(); ++w) d.set(pi[w], w, 1);
  return d;
}

std::optional<std::vector<VertexIndex>> representatives(std::size_t g_count, const std::vector<VertexIndex>& pi) {
  std::vector<VertexIndex> rep(g_count, 0);
  std::vector<bool> hit(g_count, false);
  for (VertexIndex w = 0; w < pi.size(); ++w) {
    if (pi[w] >= g_count) return std::nullopt;
    if (!hit[pi[w]]) rep[pi[w]] = w;
    hit[pi[w]] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) return std::nullopt;
  return rep;
}

// Rows (columns) of A_H at the vertices ordered by `order`, restricted to columns (rows) `cols`.
NonNegMatrix reorder(const NonNegMatrix& a, const std::vector<VertexIndex>& order) {
  NonNegMatrix out(order.size(), order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < order.size(); ++j) out.set(i, j, a(order[i], order[j]));
  return out;
}

}  // namespace

bool is_in_split_by(const Graph& g, const Graph& h, const std::vector<VertexIndex>& pi) {
  if (pi.size() != h.vertex_count()) return false;
  const auto rep = representatives(g.vertex_count(), pi);
  if (!rep) return false;
  const NonNegMatrix a_h = adjacency_matrix(h);
  NonNegMatrix em(g.vertex_count(), h.vertex_count());
  for (VertexIndex u = 0; u < g.vertex_count(); ++u)
    for (VertexIndex w = 0; w < h.vertex_count(); ++w) em.set(u, w, a_h((*rep)[u], w));
  const NonNegMatrix dt = division_of(g.vertex_count(), pi).transpose();
  return dt * em == a_h && em * dt == adjacency_matrix(g);
}

bool is_out_split_by(const Graph& g, const Graph& h, const std::vector<VertexIndex>& pi) {
  if (pi.size() != h.vertex_count()) return false;
  const auto rep = representatives(g.vertex_count(), pi);
  if (!rep) return false;
  const NonNegMatrix a_h = adjacency_matrix(h);
  NonNegMatrix em(h.vertex_count(), g.vertex_count());
  for (VertexIndex w = 0; w < h.vertex_count(); ++w)
    for (VertexIndex u = 0; u < g.vertex_count(); ++u) em.set(w, u, a_h(w, (*rep)[u]));
  const NonNegMatrix d = division_of(g.vertex_count(), pi);
  return em * d == a_h && d * em == adjacency_matrix(g);
}

bool Decomposition::all_pass() const {
  for (const auto& r : rungs)
    if (!r.passes()) return false;
  for (const auto& r : out_rungs)
    if (!r.e_out_split || !r.f_out_split) return false;
  return e_matches_higher_block && f_matches_higher_block && ladders_meet;
}

Decomposition decompose_eventual_conjugacy(const BlockMap& h, const BlockMap& h_inv, unsigned l, unsigned c) {
  const Graph& e = h.source();
  const Graph& f = h.target();
  if (!(h_inv.source() == f) || !(h_inv.target() == e)) {
    throw ContractViolation("decompose: h_inv must map the target of h back to its source");
  }
  const std::size_t ch = h.anticipation();
  const std::size_t ci = h_inv.anticipation();
  const std::size_t span = l + 2 * c + 2;  // positions 0..l+2c+1 on both sides

  Decomposition out;
  out.l = l;
  out.c = c;
  out.depth = static_cast<unsigned>(span + ch + ci);

  // Both compositions must be the identity on prefixes.
  for (const auto& x : paths_of_length(e, out.depth)) {
    const Path back = apply_prefix(h_inv, apply_prefix(h, x));
    if (!std::equal(back.begin(), back.end(), x.begin())) {
      throw ContractViolation("decompose: h_inv(h(x)) != x for x = " + join_path_ids(e, x));
    }
  }
  for (const auto& y : paths_of_length(f, out.depth)) {
    const Path back = apply_prefix(h, apply_prefix(h_inv, y));
    if (!std::equal(back.begin(), back.end(), y.begin())) {
      throw ContractViolation("decompose: h(h_inv(y)) != y for y = " + join_path_ids(f, y));
    }
  }

  std::vector<PairSeq> from_x;
  for (auto& x : paths_of_length(e, span + ch)) {
    Path y = apply_prefix(h, x);
    x.resize(span);
    from_x.push_back({std::move(x), std::move(y)});
  }
  std::vector<PairSeq> from_y;
  for (auto& y : paths_of_length(f, span + ci)) {
    Path x = apply_prefix(h_inv, y);
    y.resize(span);
    from_y.push_back({std::move(x), std::move(y)});
  }

  const std::size_t top = l + 2 * c;
  out.base = build(from_x, {l, top, l, top}, e, f);
  for (std::size_t j = 0; j <= l; ++j) {
    out.e_ladder.push_back(j == 0 ? out.base : build(from_x, {l - j, top, l, top}, e, f));
    out.f_ladder.push_back(j == 0 ? out.base : build(from_x, {l, top, l - j, top}, e, f));
  }
  const Graph& g = out.base.graph;
  std::vector<VertexIndex> e_to_g(out.base.windows.size()), f_to_g(out.base.windows.size());
  for (VertexIndex v = 0; v < e_to_g.size(); ++v) e_to_g[v] = f_to_g[v] = v;
  for (std::size_t j = 0; j < l; ++j) {
    RungCheck r;
    r.level = j;
    const auto pe = projection(out.e_ladder[j + 1], out.e_ladder[j], 1, 0, 0, 0);
    const auto pf = projection(out.f_ladder[j + 1], out.f_ladder[j], 0, 0, 1, 0);
    r.e_in_split = is_in_split_by(out.e_ladder[j].graph, out.e_ladder[j + 1].graph, pe);
    r.f_in_split = is_in_split_by(out.f_ladder[j].graph, out.f_ladder[j + 1].graph, pf);
    std::vector<VertexIndex> next_e, next_f;
    for (VertexIndex p : pe) next_e.push_back(e_to_g[p]);
    for (VertexIndex p : pf) next_f.push_back(f_to_g[p]);
    std::vector<std::size_t> count_e(g.vertex_count(), 0), count_f(g.vertex_count(), 0);
    for (VertexIndex u : next_e) ++count_e[u];
    for (VertexIndex u : next_f) ++count_f[u];
    r.fibers_balanced = count_e == count_f;
    if (j == 0 && r.fibers_balanced && r.e_in_split && r.f_in_split) {
      // Pair the fibers over each vertex of G in window order.
      std::vector<VertexIndex> order_e(next_e.size()), order_f(next_f.size());
      for (VertexIndex w = 0; w < order_e.size(); ++w) order_e[w] = w;
      for (VertexIndex w = 0; w < order_f.size(); ++w) order_f[w] = w;
      std::stable_sort(order_e.begin(), order_e.end(), [&](VertexIndex a, VertexIndex b) { return next_e[a] < next_e[b]; });
      std::stable_sort(order_f.begin(), order_f.end(), [&](VertexIndex a, VertexIndex b) { return next_f[a] < next_f[b]; });
      const NonNegMatrix a_e = reorder(adjacency_matrix(out.e_ladder[1].graph), order_e);
      const NonNegMatrix a_f = reorder(adjacency_matrix(out.f_ladder[1].graph), order_f);
      std::vector<VertexIndex> pi;
      for (VertexIndex w : order_e) pi.push_back(next_e[w]);
      const std::size_t n = pi.size();
      NonNegMatrix s = division_of(g.vertex_count(), pi).transpose();
      NonNegMatrix r_e(g.vertex_count(), n), r_f(g.vertex_count(), n);
      std::vector<bool> seen(g.vertex_count(), false);
      for (std::size_t w = 0; w < n; ++w) {
        const VertexIndex u = pi[w];
        if (seen[u]) continue;
        seen[u] = true;
        for (std::size_t k = 0; k < n; ++k) {
          r_e.set(u, k, a_e(w, k));
          r_f.set(u, k, a_f(w, k));
        }
      }
      r.triple = BeeTriple{r_e, s, r_f};
      r.triple_verifies = verify_balanced_elementary(a_e, a_f, *r.triple) && r.triple->r_a * s == adjacency_matrix(g);
    }
    e_to_g = std::move(next_e);
    f_to_g = std::move(next_f);
    out.rungs.push_back(std::move(r));
  }

  for (std::size_t i = 0; i <= 2 * c; ++i) {
    out.e_out_ladder.push_back(build(from_x, {0, top, l, l + i}, e, f));
    out.f_out_ladder.push_back(build(from_y, {l, l + i, 0, top}, e, f));
  }
  for (std::size_t i = 0; i < 2 * c; ++i) {
    OutRungCheck r;
    r.step = i;
    r.e_out_split = is_out_split_by(out.e_out_ladder[i].graph, out.e_out_ladder[i + 1].graph,
                                    projection(out.e_out_ladder[i + 1], out.e_out_ladder[i], 0, 0, 0, 1));
    r.f_out_split = is_out_split_by(out.f_out_ladder[i].graph, out.f_out_ladder[i + 1].graph,
                                    projection(out.f_out_ladder[i + 1], out.f_out_ladder[i], 0, 1, 0, 0));
    out.out_rungs.push_back(r);
  }

  auto matches_higher_block = [&](const WindowGraph& wg, const Graph& g0, bool x_side) {
    const HigherBlockGraph hb = higher_block_graph(g0, top + 2);
    std::map<Path, VertexIndex> by_path;
    for (VertexIndex v = 0; v < hb.vertex_paths.size(); ++v) by_path.emplace(hb.vertex_paths[v], v);
    if (wg.graph.vertex_count() != hb.graph.vertex_count()) return false;
    std::vector<VertexId> order;
    for (const auto& [x, y] : wg.windows) {
      auto it = by_path.find(x_side ? x : y);
      if (it == by_path.end()) return false;
      order.push_back(hb.graph.vertex(it->second));
    }
    std::vector<VertexId> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != hb.graph.vertices()) return false;
    return adjacency_matrix(wg.graph) == adjacency_matrix(hb.graph, order);
  };
  out.e_matches_higher_block = matches_higher_block(out.e_out_ladder.front(), e, true);
  out.f_matches_higher_block = matches_higher_block(out.f_out_ladder.front(), f, false);
  out.ladders_meet = out.e_ladder.back().graph == out.e_out_ladder.back().graph &&
                     out.f_ladder.back().graph == out.f_out_ladder.back().graph;
  return out;
}

}  // namespace evconj
