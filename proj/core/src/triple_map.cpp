#include <algorithm>
#include <map>

#include "evconj/blockmap.hpp"
#include "evconj/errors.hpp"

namespace evconj {

namespace {

std::uint32_t small(const Integer& v) {
  if (v > 1'000'000) throw ContractViolation("block_map_from_triple: matrix entry too large");
  return static_cast<std::uint32_t>(v);
}

// Edges of g from i to j in id order, matched with two-step auxiliary paths
// i -(first)-> k -(second)-> j enumerated lexicographically.
std::vector<std::pair<AuxEdge, AuxEdge>> pair_edges(const Graph& g, const NonNegMatrix& first,
                                                    const NonNegMatrix& second, const char* side) {
  std::vector<std::pair<AuxEdge, AuxEdge>> out(g.edge_count());
  const std::size_t m = first.cols();
  for (VertexIndex i = 0; i < g.vertex_count(); ++i) {
    for (VertexIndex j = 0; j < g.vertex_count(); ++j) {
      std::vector<std::pair<AuxEdge, AuxEdge>> routes;
      for (std::uint32_t k = 0; k < m; ++k)
        for (std::uint32_t t = 0; t < small(first(i, k)); ++t)
          for (std::uint32_t u = 0; u < small(second(k, j)); ++u) routes.push_back({{i, k, t}, {k, j, u}});
      std::size_t next = 0;
      for (EdgeIndex e : g.out_edges(i)) {
        if (g.dst(e) != j) continue;
        if (next == routes.size()) {
          throw ContractViolation(std::string("block_map_from_triple: ") + side + " fiber " + g.vertex(i) + " -> " +
                                  g.vertex(j) + " has more edges than paths");
        }
        out[e] = routes[next++];
      }
      if (next != routes.size()) {
        throw ContractViolation(std::string("block_map_from_triple: ") + side + " fiber " + g.vertex(i) + " -> " +
                                g.vertex(j) + " has fewer edges than paths");
      }
    }
  }
  return out;
}

}  // namespace

TripleMap block_map_from_triple(const Graph& e, const Graph& f, const BeeTriple& t) {
  const NonNegMatrix a_e = adjacency_matrix(e);
  const NonNegMatrix a_f = adjacency_matrix(f);
  if (!verify_balanced_elementary(a_e, a_f, t)) {
    throw ContractViolation("block_map_from_triple: the triple does not verify against the two graphs");
  }
  TripleMap out;
  TriplePairing& pr = out.pairing;
  pr.e_edges = pair_edges(e, t.s, t.r_a, "E");
  pr.f_edges = pair_edges(f, t.s, t.r_b, "F");

  const std::size_t n = t.s.rows();
  const std::size_t m = t.s.cols();
  std::map<std::pair<AuxEdge, AuxEdge>, std::size_t> middle_by_e;
  for (std::uint32_t k = 0; k < m; ++k) {
    for (std::uint32_t k2 = 0; k2 < m; ++k2) {
      std::vector<std::pair<AuxEdge, AuxEdge>> via_e, via_f;
      for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t a = 0; a < small(t.s(i, k2)); ++a) {
          for (std::uint32_t b = 0; b < small(t.r_a(k, i)); ++b) via_e.push_back({{k, i, b}, {i, k2, a}});
          for (std::uint32_t b = 0; b < small(t.r_b(k, i)); ++b) via_f.push_back({{k, i, b}, {i, k2, a}});
        }
      }
      std::sort(via_e.begin(), via_e.end());
      std::sort(via_f.begin(), via_f.end());
      if (via_e.size() != via_f.size()) throw ConsistencyError("block_map_from_triple: R_E S != R_F S");
      for (std::uint32_t c = 0; c < via_e.size(); ++c) {
        middle_by_e.emplace(via_e[c], pr.middle_edges.size());
        pr.middle_edges.push_back({k, k2, c, via_e[c].first, via_e[c].second, via_f[c].first, via_f[c].second});
      }
    }
  }
  std::map<std::pair<AuxEdge, AuxEdge>, EdgeIndex> f_by_route;
  for (EdgeIndex y = 0; y < f.edge_count(); ++y) f_by_route.emplace(pr.f_edges[y], y);

  BlockTable table;
  for (const auto& x : paths_of_length(e, 3)) {
    const auto& [s0, re0] = pr.e_edges[x[0]];
    const auto& [s1, re1] = pr.e_edges[x[1]];
    const auto& s2 = pr.e_edges[x[2]].first;
    const MiddleEdge& g0 = pr.middle_edges.at(middle_by_e.at({re0, s1}));
    const MiddleEdge& g1 = pr.middle_edges.at(middle_by_e.at({re1, s2}));
    const EdgeIndex y0 = f_by_route.at({s0, g0.r_f});
    const EdgeIndex y1 = f_by_route.at({g0.s_f, g1.r_f});
    table.emplace(x, Path{y0, y1});
  }
  out.map = make_block_map(e, f, 1, 1, std::move(table));
  return out;
}

}  // namespace evconj
