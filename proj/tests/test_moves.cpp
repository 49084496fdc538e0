#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "evconj/errors.hpp"
#include "evconj/intmat.hpp"
#include "evconj/moves.hpp"
#include "support/fixtures.hpp"

using namespace evconj;

namespace {

bool iso(const Graph& a, const Graph& b) { return are_isomorphic(a, b).status == IsoStatus::found; }

Cells sorted_cells(Cells c) {
  for (auto& cell : c) std::sort(cell.begin(), cell.end());
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace

TEST(OutSplit, GoldenMean) {
  const SplitRecord r = out_split(fixtures::golden_mean(), {"v", {{"e"}, {"f"}}});
  EXPECT_EQ(r.result.vertices(), (std::vector<VertexId>{"v#1", "v#2", "w#1"}));
  const std::vector<EdgeSpec> expected{{"e#1", "v#1", "v#1"}, {"e#2", "v#1", "v#2"}, {"f#1", "v#2", "w#1"},
                                       {"g#1", "w#1", "v#1"}, {"g#2", "w#1", "v#2"}};
  EXPECT_EQ(r.result.edges(), expected);
  EXPECT_EQ(r.division, NonNegMatrix::from_rows({{1, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(r.edge_matrix, NonNegMatrix::from_rows({{1, 0}, {0, 1}, {1, 0}}));
  EXPECT_TRUE(r.factorization_holds());
  EXPECT_EQ(adjacency_matrix(r.source), r.division * r.edge_matrix);
  EXPECT_EQ(adjacency_matrix(r.result), r.edge_matrix * r.division);
  EXPECT_TRUE(iso(r.result, fixtures::expected_out_split()));
  EXPECT_FALSE(r.result.has_sources());
}

TEST(OutSplit, RejectsBadPartitions) {
  const Graph g = fixtures::golden_mean();
  EXPECT_THROW(out_split(g, {"v", {{"e"}}}), ContractViolation);
  EXPECT_THROW(out_split(g, {"v", {{"e", "f"}, {}}}), ContractViolation);
  EXPECT_THROW(out_split(g, {"v", {{"e"}, {"g"}}}), ContractViolation);
  EXPECT_THROW(out_split(g, {"v", {{"e"}, {"e", "f"}}}), ContractViolation);
  EXPECT_THROW(out_split(g, {"x", {{"e", "f"}}}), ContractViolation);
}

TEST(OutSplit, TrivialPartitionIsIsomorphic) {
  const Graph g = fixtures::golden_mean();
  EXPECT_TRUE(iso(out_split(g, {"v", {{"e", "f"}}}).result, g));
}

TEST(InSplit, GoldenMeanPartitions) {
  const Graph g = fixtures::golden_mean();
  const SplitRecord a = in_split(g, {"v", {{"e"}, {"g"}}});
  EXPECT_TRUE(iso(a.result, fixtures::expected_in_split_eg()));
  EXPECT_FALSE(a.result.has_sources());
  EXPECT_TRUE(a.factorization_holds());
  EXPECT_EQ(adjacency_matrix(g), a.edge_matrix * a.division.transpose());
  EXPECT_EQ(adjacency_matrix(a.result), a.division.transpose() * a.edge_matrix);

  const SplitRecord b = in_split(g, {"v", {{"e", "g"}, {}}});
  EXPECT_TRUE(iso(b.result, fixtures::expected_in_split_source()));
  EXPECT_EQ(validate_graph(b.result).sources, std::vector<VertexId>{"v#2"});
  EXPECT_TRUE(b.factorization_holds());
}

TEST(InSplit, OneSourcePerEmptyCell) {
  const Graph g = fixtures::golden_mean();
  const SplitRecord r = in_split(g, {"v", {{}, {"e", "g"}, {}}});
  EXPECT_EQ(validate_graph(r.result).sources.size(), 2u);
  EXPECT_FALSE(r.result.has_sinks());
}

TEST(InSplit, RejectsBadPartitions) {
  const Graph g = fixtures::golden_mean();
  EXPECT_THROW(in_split(g, {"v", {{"e"}}}), ContractViolation);
  EXPECT_THROW(in_split(g, {"v", {{"e", "f"}, {"g"}}}), ContractViolation);
  EXPECT_THROW(in_split(g, {"v", {}}), ContractViolation);
}

TEST(BalancedSplit, TailLoopPair) {
  const BalancedSplit s = balanced_in_split(fixtures::tail_loop(), {"v", {{"e", "f"}, {}}}, {"v", {{"f"}, {"e"}}});
  EXPECT_EQ(adjacency_matrix(s.e.result, {"v#1", "v#2", "u#1"}),
            NonNegMatrix::from_rows({{1, 0, 0}, {1, 0, 0}, {1, 0, 0}}));
  EXPECT_EQ(adjacency_matrix(s.f.result, {"v#1", "v#2", "u#1"}),
            NonNegMatrix::from_rows({{0, 1, 0}, {0, 1, 0}, {1, 0, 0}}));
  EXPECT_EQ(are_isomorphic(s.e.result, s.f.result).status, IsoStatus::none);
  EXPECT_TRUE(verify_balanced_elementary(adjacency_matrix(s.e.result), adjacency_matrix(s.f.result), s.triple));
  // R S is A_G in the base order (u, v); in the order (v, u) it reads [[1,0],[1,0]].
  EXPECT_EQ(s.triple.r_a * s.triple.s, adjacency_matrix(fixtures::tail_loop()));
  EXPECT_EQ(s.triple.r_b * s.triple.s, adjacency_matrix(fixtures::tail_loop()));
  EXPECT_EQ(adjacency_matrix(fixtures::tail_loop(), {"v", "u"}), NonNegMatrix::from_rows({{1, 0}, {1, 0}}));
}

TEST(BalancedSplit, RejectsMismatchedCells) {
  EXPECT_THROW(balanced_in_split(fixtures::tail_loop(), {"v", {{"e", "f"}, {}}}, {"v", {{"e", "f"}}}),
               ContractViolation);
  EXPECT_THROW(balanced_in_split(fixtures::tail_loop(), {"v", {{"e", "f"}}}, {"u", {{}}}), ContractViolation);
}

TEST(Script, ChainExampleGraphs) {
  const SplitHistory h = iterated_balanced_in_split(fixtures::chain_script());
  ASSERT_EQ(h.length(), 2u);
  EXPECT_EQ(h.e_final().vertex_count(), 5u);
  EXPECT_EQ(h.f_final().vertex_count(), 5u);
  EXPECT_TRUE(iso(h.e_final(), fixtures::expected_e2()));
  EXPECT_TRUE(iso(h.f_final(), fixtures::expected_f2()));
  EXPECT_FALSE(iso(h.e_final(), h.f_final()));
}

TEST(Script, EmptyScriptIsBase) {
  const SplitHistory h = iterated_balanced_in_split({fixtures::golden_mean(), {}});
  EXPECT_EQ(h.e_final(), fixtures::golden_mean());
  EXPECT_EQ(h.f_final(), fixtures::golden_mean());
}

TEST(Script, ErrorsNameTheStep) {
  SplitScript s = fixtures::chain_script();
  s.steps[1].vertex = "w";
  try {
    iterated_balanced_in_split(s);
    FAIL();
  } catch (const ContractViolation& e) {
    EXPECT_NE(std::string(e.what()).find("step 2"), std::string::npos);
  }
}

TEST(Script, RandomStepsFactorize) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    const SplitScript s = fixtures::random_script(rng, fixtures::random_graph(rng, 5), 1 + rng() % 3, 3);
    const SplitHistory h = iterated_balanced_in_split(s);
    ASSERT_FALSE(h.steps.empty());
    const auto& first = h.steps.front();
    EXPECT_TRUE(verify_balanced_elementary(adjacency_matrix(first.e.result), adjacency_matrix(first.f.result),
                                           first.triple));
    for (const auto& st : h.steps) {
      EXPECT_TRUE(st.e.factorization_holds());
      EXPECT_TRUE(st.f.factorization_holds());
      EXPECT_EQ(st.e.division, st.f.division);
    }
  }
}

TEST(MatricesToSplit, GoldenMeanOutSplitRoundTrip) {
  const Graph g = fixtures::golden_mean();
  const SplitRecord r = matrices_to_split(g, NonNegMatrix::from_rows({{1, 1, 0}, {0, 0, 1}}),
                                          NonNegMatrix::from_rows({{1, 0}, {0, 1}, {1, 0}}), SplitKind::out);
  EXPECT_EQ(r.vertex, "v");
  EXPECT_EQ(sorted_cells(r.cells), sorted_cells({{"e"}, {"f"}}));
}

TEST(MatricesToSplit, IdentityIsTrivial) {
  const Graph g = fixtures::golden_mean();
  const SplitRecord r = matrices_to_split(g, NonNegMatrix::identity(2), adjacency_matrix(g), SplitKind::out);
  EXPECT_TRUE(iso(r.result, g));
}

TEST(MatricesToSplit, EmptyCellFromZeroColumn) {
  const Graph g = fixtures::golden_mean();
  const SplitRecord orig = in_split(g, {"v", {{"e", "g"}, {}}});
  const SplitRecord r = matrices_to_split(g, orig.division, orig.edge_matrix, SplitKind::in);
  EXPECT_EQ(sorted_cells(r.cells), sorted_cells({{"e", "g"}, {}}));
  EXPECT_TRUE(iso(r.result, orig.result));
}

TEST(MatricesToSplit, RejectsInconsistentMatrices) {
  const Graph g = fixtures::golden_mean();
  EXPECT_THROW(matrices_to_split(g, NonNegMatrix::identity(2), NonNegMatrix::identity(2), SplitKind::out),
               ContractViolation);
  EXPECT_THROW(matrices_to_split(g, NonNegMatrix::identity(3), NonNegMatrix::identity(3), SplitKind::out),
               DimensionError);
}

TEST(MatricesToSplit, RandomRoundTrips) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 60; ++t) {
    const Graph g = fixtures::random_graph(rng, 5, 3);
    const std::string v = g.vertex(static_cast<VertexIndex>(rng() % g.vertex_count()));
    const std::size_t n = 1 + rng() % 3;
    const Cells in_cells = fixtures::random_cells(rng, g, v, n);
    const SplitRecord in = in_split(g, {v, in_cells});
    const SplitRecord in_back = matrices_to_split(g, in.division, in.edge_matrix, SplitKind::in);
    EXPECT_TRUE(iso(in_back.result, in.result));
    EXPECT_EQ(in_back.division, in.division);
    EXPECT_EQ(in_back.edge_matrix, in.edge_matrix);

    Cells out_cells(n);
    const auto outs = g.out_edges(g.vertex_index(v));
    if (outs.size() < n) continue;
    for (std::size_t i = 0; i < outs.size(); ++i) out_cells[i < n ? i : rng() % n].push_back(g.edge_id(outs[i]));
    const SplitRecord out = out_split(g, {v, out_cells});
    const SplitRecord out_back = matrices_to_split(g, out.division, out.edge_matrix, SplitKind::out);
    EXPECT_TRUE(iso(out_back.result, out.result));
    EXPECT_EQ(out_back.edge_matrix, out.edge_matrix);
  }
}

TEST(Chain, ChainExampleHasThreeLinks) {
  const ElementaryChain c = connect_by_elementary(fixtures::chain_script());
  ASSERT_EQ(c.links.size(), 3u);
  for (const auto& l : c.links) EXPECT_TRUE(verify_balanced_elementary(l.a, l.b, l.triple)) << l.label;
  EXPECT_EQ(c.attached_sources, 1u);
  EXPECT_TRUE(iso(c.g_prime, fixtures::expected_g_prime()));
  EXPECT_EQ(validate_graph(c.g_prime).sources.size(), 1u);
  EXPECT_TRUE(iso(c.links[0].split.f.result, fixtures::expected_e10()) ||
              iso(c.links[0].split.e.result, fixtures::expected_e10()));
  EXPECT_TRUE(iso(c.links[1].split.e.result, fixtures::expected_e10()));
  EXPECT_TRUE(iso(c.links[1].split.f.result, fixtures::expected_f01()));
  EXPECT_TRUE(verify_certificate(c.certificate()));
  const auto cert = c.certificate();
  EXPECT_EQ(cert.matrices.front(), adjacency_matrix(iterated_balanced_in_split(fixtures::chain_script()).e_final(),
                                                    c.links.front().order));
}

TEST(Chain, RequiresTwoSteps) {
  EXPECT_THROW(connect_by_elementary(fixtures::tail_loop_script()), ContractViolation);
}

TEST(Chain, RandomScriptsGiveVerifiedChains) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 40; ++t) {
    const std::size_t steps = 2 + rng() % 2;
    const SplitScript s = fixtures::random_script(rng, fixtures::random_graph(rng, 4), steps, 3);
    const ElementaryChain c = connect_by_elementary(s);
    EXPECT_EQ(c.links.size(), 2 * steps - 1);
    EXPECT_TRUE(verify_certificate(c.certificate()));
    std::size_t expected_sources = 0;
    for (std::size_t i = 1; i < steps; ++i) expected_sources += s.steps[i].cells_e.size() - 1;
    EXPECT_EQ(c.attached_sources, expected_sources);
  }
}
