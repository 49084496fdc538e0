#pragma once

#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "evconj/graph.hpp"
#include "evconj/matrix.hpp"
#include "evconj/moves.hpp"

namespace fixtures {

using evconj::Graph;
using evconj::NonNegMatrix;
using evconj::SplitScript;

// Multigraph from (src, dst, multiplicity) triples; edge ids are "<src>_<dst>_<k>".
inline Graph multigraph(std::vector<std::string> vertices,
                        const std::vector<std::tuple<std::string, std::string, int>>& arrows) {
  std::vector<evconj::EdgeSpec> edges;
  for (const auto& [s, d, mult] : arrows) {
    for (int k = 0; k < mult; ++k) edges.push_back({s + "_" + d + "_" + std::to_string(k), s, d});
  }
  return Graph(std::move(vertices), std::move(edges));
}

// v, w with e: v->v, f: v->w, g: w->v.
inline Graph golden_mean() {
  return Graph({"v", "w"}, {{"e", "v", "v"}, {"f", "v", "w"}, {"g", "w", "v"}});
}

// u -> v plus a loop at v.
inline Graph tail_loop() { return Graph({"u", "v"}, {{"e", "v", "v"}, {"f", "u", "v"}}); }

inline SplitScript tail_loop_script() {
  return {tail_loop(), {{"v", {{"e", "f"}, {}}, {{"f"}, {"e"}}}}};
}

// w -> u, four edges u -> v, v -> w; split at v then at w#1.
inline Graph chain_base() {
  return Graph({"u", "v", "w"}, {{"a", "w", "u"},
                                 {"b1", "u", "v"},
                                 {"b2", "u", "v"},
                                 {"b3", "u", "v"},
                                 {"b4", "u", "v"},
                                 {"e", "v", "w"}});
}

inline SplitScript chain_script() {
  return {chain_base(),
          {{"v", {{"b1", "b2"}, {"b3", "b4"}}, {{"b1", "b2", "b3"}, {"b4"}}},
           {"w#1", {{"e#1"}, {"e#2"}}, {{"e#1"}, {"e#2"}}}}};
}

// Expected graphs of the two-step chain, built by hand.
inline Graph expected_e2() {
  return multigraph({"m", "v11", "v21", "w11", "w12"},
                    {{"w11", "m", 1}, {"w12", "m", 1}, {"m", "v11", 2}, {"m", "v21", 2}, {"v11", "w11", 1}, {"v21", "w12", 1}});
}
inline Graph expected_f2() {
  return multigraph({"m", "v11", "v21", "w11", "w12"},
                    {{"w11", "m", 1}, {"w12", "m", 1}, {"m", "v11", 3}, {"m", "v21", 1}, {"v11", "w11", 1}, {"v21", "w12", 1}});
}
inline Graph expected_e10() {
  return multigraph({"m", "v11", "v21", "w11", "w12"},
                    {{"w11", "m", 1}, {"w12", "m", 1}, {"m", "v11", 2}, {"m", "v21", 2}, {"v11", "w11", 1}, {"v21", "w11", 1}});
}
inline Graph expected_f01() {
  return multigraph({"m", "v11", "v21", "w11", "w12"},
                    {{"w11", "m", 1}, {"w12", "m", 1}, {"m", "v11", 3}, {"m", "v21", 1}, {"v11", "w11", 1}, {"v21", "w11", 1}});
}
inline Graph expected_g_prime() {
  return multigraph({"m", "s", "v", "w"}, {{"w", "m", 1}, {"m", "v", 4}, {"v", "w", 1}, {"s", "m", 1}});
}

// Expected golden-mean split results, built by hand.
inline Graph expected_out_split() {
  return multigraph({"a", "b", "c"}, {{"a", "a", 1}, {"a", "b", 1}, {"b", "c", 1}, {"c", "a", 1}, {"c", "b", 1}});
}
// In-split at v with {e}|{g}: v1 keeps the loop, v2 receives g; both copies emit e and f.
inline Graph expected_in_split_eg() {
  return multigraph({"v1", "v2", "w"}, {{"v1", "v1", 1}, {"v2", "v1", 1}, {"v1", "w", 1}, {"v2", "w", 1}, {"w", "v2", 1}});
}
// In-split at v with {e,g}|{}: v2 is a source.
inline Graph expected_in_split_source() {
  return multigraph({"v1", "v2", "w"}, {{"v1", "v1", 1}, {"v2", "v1", 1}, {"v1", "w", 1}, {"v2", "w", 1}, {"w", "v1", 1}});
}

// Adjacency matrices from the non-transitivity example.
inline NonNegMatrix nontransitive_e() { return NonNegMatrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 1, 0}}); }
inline NonNegMatrix nontransitive_f() { return NonNegMatrix::from_rows({{1, 1, 0}, {1, 1, 0}, {1, 1, 0}}); }
inline NonNegMatrix nontransitive_g() { return NonNegMatrix::from_rows({{0, 2, 0}, {0, 2, 0}, {0, 2, 0}}); }

// Random graph without sinks: every vertex gets 1..max_out out-edges.
inline Graph random_graph(std::mt19937_64& rng, std::size_t max_vertices, std::size_t max_out = 2) {
  std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
  const std::size_t n = nv(rng);
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back("x" + std::to_string(i));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<std::size_t> deg(1, max_out);
  std::vector<evconj::EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t d = deg(rng);
    for (std::size_t k = 0; k < d; ++k) edges.push_back({"a" + std::to_string(edges.size()), vs[i], vs[pick(rng)]});
  }
  return Graph(std::move(vs), std::move(edges));
}

// Deals the in-edges of `v` into `cells` cells at random (empty cells allowed).
inline evconj::Cells random_cells(std::mt19937_64& rng, const Graph& g, const std::string& v, std::size_t cells) {
  evconj::Cells out(cells);
  std::uniform_int_distribution<std::size_t> pick(0, cells - 1);
  for (const auto e : g.in_edges(g.vertex_index(v))) out[pick(rng)].push_back(g.edge_id(e));
  return out;
}

// Random valid script with `steps` balanced in-split steps.
inline SplitScript random_script(std::mt19937_64& rng, const Graph& base, std::size_t steps,
                                 std::size_t max_cells = 2) {
  SplitScript s{base, {}};
  Graph e = base, f = base;
  std::uniform_int_distribution<std::size_t> ncells(1, max_cells);
  for (std::size_t i = 0; i < steps; ++i) {
    std::uniform_int_distribution<std::size_t> pv(0, e.vertex_count() - 1);
    const std::string v = e.vertex(static_cast<evconj::VertexIndex>(pv(rng)));
    const std::size_t n = ncells(rng);
    evconj::SplitStep st{v, random_cells(rng, e, v, n), random_cells(rng, f, v, n)};
    e = evconj::in_split(e, {v, st.cells_e}).result;
    f = evconj::in_split(f, {v, st.cells_f}).result;
    s.steps.push_back(std::move(st));
  }
  return s;
}

// Plain row-major product over long long, kept separate from the library product.
inline std::vector<long long> naive_product(const std::vector<long long>& a, const std::vector<long long>& b,
                                            std::size_t n, std::size_t m, std::size_t p) {
  std::vector<long long> out(n * p, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = 0; j < p; ++j) out[i * p + j] += a[i * m + k] * b[k * p + j];
  return out;
}

}  // namespace fixtures
