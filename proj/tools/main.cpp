// Command-line front end for the evconj library.
//
// Exit codes: 0 = success / positive verdict, 1 = negative verdict, 2 = usage or input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "evconj/blockmap.hpp"
#include "evconj/decompose.hpp"
#include "evconj/equivalence.hpp"
#include "evconj/errors.hpp"
#include "evconj/graph.hpp"
#include "evconj/intmat.hpp"
#include "evconj/moves.hpp"
#include "evconj/serialize.hpp"

using namespace evconj;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Graph read_graph(const std::string& path) { return graph_from_json(read_json(path)); }
NonNegMatrix read_matrix(const std::string& path) { return matrix_from_json(read_json(path)); }

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw StructuralError("cannot write '" + out_path + "'");
  out << text;
}

void emit(const Json& j, const std::string& out_path) { emit(j.dump(2) + "\n", out_path); }

std::vector<VertexId> split_list(const std::string& text) {
  std::vector<VertexId> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

SearchBounds bounds_from(std::optional<std::size_t> m, std::optional<long long> cap, std::uint64_t budget, bool sink_free) {
  SearchBounds b;
  b.max_inner_dim = m;
  if (cap) b.entry_cap = Integer(*cap);
  b.budget = budget;
  b.sink_free = sink_free;
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eventual conjugacy of finite directed graphs: moves, block maps, balanced shift equivalence"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "Write the result here instead of stdout");

  // Shared option storage; each subcommand binds the ones it uses.
  std::string graph_path, g2_path, a_path, b_path, triple_path, cert_path, script_path, map_path, inverse_path;
  std::string source_path, target_path, vertex, cells, cells_e, cells_f, order, name = "G", dot_dir, matrix_path;
  std::size_t n = 1, iso_cap = kIsoVertexCap;
  std::optional<std::size_t> m_max;
  std::optional<long long> cap;
  std::uint64_t budget = 2'000'000'000ULL, states = 200'000;
  unsigned depth = 0, k_max = 0, big_k_max = 4, lag = 0, cont = 0, search_depth = 2;
  bool sink_free = false, backward = false;

  auto* validate = app.add_subcommand("validate", "Report sinks and sources of a graph");
  validate->add_option("--graph", graph_path)->required();

  auto* paths = app.add_subcommand("paths", "List all paths of length n");
  paths->add_option("--graph", graph_path)->required();
  paths->add_option("--n", n)->required();

  auto* higher = app.add_subcommand("higher-block", "N'th higher block graph");
  higher->add_option("--graph", graph_path)->required();
  higher->add_option("--n", n)->required();

  auto* adj = app.add_subcommand("adj", "Adjacency matrix of a graph, or graph of a matrix");
  auto* adj_graph = adj->add_option("--graph", graph_path);
  auto* adj_matrix = adj->add_option("--matrix", matrix_path);
  adj->add_option("--order", order, "Comma-separated vertex order");
  adj_graph->excludes(adj_matrix);

  auto* iso = app.add_subcommand("iso", "Graph isomorphism search");
  iso->add_option("--g1", graph_path)->required();
  iso->add_option("--g2", g2_path)->required();
  iso->add_option("--cap", iso_cap, "Vertex cap");

  auto* out_split_cmd = app.add_subcommand("out-split", "Move (O)");
  auto* in_split_cmd = app.add_subcommand("in-split", "Move (I-)");
  for (auto* sc : {out_split_cmd, in_split_cmd}) {
    sc->add_option("--graph", graph_path)->required();
    sc->add_option("--vertex", vertex)->required();
    sc->add_option("--cells", cells, "Cells, e.g. \"e,f|g|\"")->required();
  }

  auto* balanced = app.add_subcommand("balanced-split", "Move (I+)");
  balanced->add_option("--graph", graph_path)->required();
  balanced->add_option("--vertex", vertex)->required();
  balanced->add_option("--cells-e", cells_e)->required();
  balanced->add_option("--cells-f", cells_f)->required();

  auto* script_run = app.add_subcommand("script-run", "Replay an iterated balanced in-split script");
  script_run->add_option("--script", script_path)->required();
  script_run->add_option("--dot-dir", dot_dir, "Write one DOT file per stage here");

  auto* connect = app.add_subcommand("connect-chain", "Chain of elementary balanced in-splits for a script");
  connect->add_option("--script", script_path)->required();

  auto* bee_verify = app.add_subcommand("bee-verify", "Verify a balanced elementary triple");
  bee_verify->add_option("--a", a_path)->required();
  bee_verify->add_option("--b", b_path)->required();
  bee_verify->add_option("--triple", triple_path)->required();

  auto* bee_decide = app.add_subcommand("bee-decide", "Bounded decision of balanced elementary equivalence");
  auto* bsse = app.add_subcommand("bsse-search", "Bounded search for balanced strong shift equivalence");
  for (auto* sc : {bee_decide, bsse}) {
    sc->add_option("--a", a_path)->required();
    sc->add_option("--b", b_path)->required();
    sc->add_option("--m", m_max, "Largest inner dimension");
    sc->add_option("--cap", cap, "Largest factor entry");
    sc->add_option("--budget", budget, "Largest candidate count per decision");
    sc->add_flag("--sink-free", sink_free, "Reject factors with zero rows");
  }
  bsse->add_option("--depth", search_depth, "Largest chain length");
  bsse->add_option("--states", states, "Largest number of generated matrices");

  auto* cert_verify = app.add_subcommand("cert-verify", "Verify a balanced strong shift equivalence certificate");
  cert_verify->add_option("--cert", cert_path)->required();

  auto* bm_check = app.add_subcommand("blockmap-check", "Validate a block map and check its conditions");
  bm_check->add_option("--source", source_path)->required();
  bm_check->add_option("--target", target_path)->required();
  bm_check->add_option("--map", map_path)->required();
  bm_check->add_option("--depth", depth, "Sliding check depth (default l+c+5)");
  bm_check->add_option("--k-max", k_max, "Largest k (default l+3)");
  bm_check->add_option("--K-max", big_k_max, "Largest K for injectivity");

  auto* psi = app.add_subcommand("psi", "Block map psi of a split script");
  psi->add_option("--script", script_path)->required();
  psi->add_flag("--backward", backward, "Build the map from the F side to the E side");

  auto* triple_map = app.add_subcommand("triple-map", "(1,1)-block map from a balanced triple");
  triple_map->add_option("--e", source_path)->required();
  triple_map->add_option("--f", target_path)->required();
  triple_map->add_option("--triple", triple_path)->required();

  auto* reduce = app.add_subcommand("reduce-c", "Move the anticipation of a block map into a higher block graph");
  reduce->add_option("--source", source_path)->required();
  reduce->add_option("--target", target_path)->required();
  reduce->add_option("--map", map_path)->required();

  auto* decompose = app.add_subcommand("decompose", "Base graph and split ladders of an eventual conjugacy");
  decompose->add_option("--source", source_path)->required();
  decompose->add_option("--target", target_path)->required();
  decompose->add_option("--map", map_path)->required();
  decompose->add_option("--inverse", inverse_path)->required();
  decompose->add_option("--l", lag)->required();
  decompose->add_option("--c", cont)->required();

  auto* witness = app.add_subcommand("witness", "Eventual conjugacy witness from a script or by matrix search");
  auto* w_script = witness->add_option("--script", script_path);
  auto* w_e = witness->add_option("--e", source_path);
  auto* w_f = witness->add_option("--f", target_path);
  witness->add_option("--search-depth", search_depth, "Largest chain length for the matrix search");
  witness->add_option("--depth", depth, "Check depth (default l+c+5)");
  w_script->excludes(w_e)->excludes(w_f);
  w_e->needs(w_f);
  w_f->needs(w_e);

  auto* dot = app.add_subcommand("dot", "DOT rendering of a graph");
  dot->add_option("--graph", graph_path)->required();
  dot->add_option("--name", name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate->parsed()) {
      const ValidationReport r = validate_graph(read_graph(graph_path));
      emit(Json{{"vertex_count", r.vertex_count},
                {"edge_count", r.edge_count},
                {"has_sinks", r.has_sinks()},
                {"has_sources", r.has_sources()},
                {"sinks", r.sinks},
                {"sources", r.sources}},
           out_path);
      return r.has_sinks() ? kNegative : kOk;
    }
    if (paths->parsed()) {
      const Graph g = read_graph(graph_path);
      const auto ps = paths_of_length(g, n);
      Json list = Json::array();
      for (const auto& p : ps) list.push_back(path_ids(g, p));
      emit(Json{{"n", n}, {"count", ps.size()}, {"paths", std::move(list)}}, out_path);
      return kOk;
    }
    if (higher->parsed()) {
      emit(to_json(higher_block_graph(read_graph(graph_path), n).graph), out_path);
      return kOk;
    }
    if (adj->parsed()) {
      if (!matrix_path.empty()) {
        emit(to_json(graph_from_matrix(read_matrix(matrix_path))), out_path);
        return kOk;
      }
      if (graph_path.empty()) throw CLI::ValidationError("adj needs --graph or --matrix");
      const Graph g = read_graph(graph_path);
      emit(to_json(order.empty() ? adjacency_matrix(g) : adjacency_matrix(g, split_list(order))), out_path);
      return kOk;
    }
    if (iso->parsed()) {
      const Graph g1 = read_graph(graph_path);
      const Graph g2 = read_graph(g2_path);
      const IsomorphismResult r = are_isomorphic(g1, g2, iso_cap);
      Json j;
      j["status"] = r.status == IsoStatus::found ? "found" : r.status == IsoStatus::none ? "none" : "bound_exceeded";
      if (r.bijection) {
        Json b = Json::object();
        for (VertexIndex v = 0; v < g1.vertex_count(); ++v) b[g1.vertex(v)] = g2.vertex(r.bijection->forward[v]);
        j["bijection"] = std::move(b);
      }
      emit(j, out_path);
      return r.status == IsoStatus::found ? kOk : kNegative;
    }
    if (out_split_cmd->parsed() || in_split_cmd->parsed()) {
      const Graph g = read_graph(graph_path);
      const SplitRecord r = out_split_cmd->parsed() ? out_split(g, {vertex, parse_cells(cells)})
                                                    : in_split(g, {vertex, parse_cells(cells)});
      Json j = to_json(r);
      j["dot"] = to_dot(r.result, "split");
      emit(j, out_path);
      return kOk;
    }
    if (balanced->parsed()) {
      const BalancedSplit s = balanced_in_split(read_graph(graph_path), {vertex, parse_cells(cells_e)},
                                                {vertex, parse_cells(cells_f)});
      emit(Json{{"E", to_json(s.e)}, {"F", to_json(s.f)}, {"triple", to_json(s.triple)},
                {"triple_verifies", verify_balanced_elementary(adjacency_matrix(s.e.result), adjacency_matrix(s.f.result), s.triple)}},
           out_path);
      return kOk;
    }
    if (script_run->parsed()) {
      const SplitHistory h = iterated_balanced_in_split(script_from_json(read_json(script_path)));
      Json e = Json::array(), f = Json::array(), triples = Json::array();
      for (std::size_t i = 0; i <= h.length(); ++i) {
        e.push_back(to_json(h.e_graph(i)));
        f.push_back(to_json(h.f_graph(i)));
        if (i > 0) triples.push_back(to_json(h.steps[i - 1].triple));
        if (!dot_dir.empty()) {
          std::filesystem::create_directories(dot_dir);
          emit(to_dot(h.e_graph(i), "E_" + std::to_string(i)), dot_dir + "/E_" + std::to_string(i) + ".dot");
          emit(to_dot(h.f_graph(i), "F_" + std::to_string(i)), dot_dir + "/F_" + std::to_string(i) + ".dot");
        }
      }
      emit(Json{{"steps", h.length()}, {"E", std::move(e)}, {"F", std::move(f)}, {"triples", std::move(triples)}}, out_path);
      return kOk;
    }
    if (connect->parsed()) {
      emit(to_json(connect_by_elementary(script_from_json(read_json(script_path)))), out_path);
      return kOk;
    }
    if (bee_verify->parsed()) {
      const bool ok = verify_balanced_elementary(read_matrix(a_path), read_matrix(b_path), triple_from_json(read_json(triple_path)));
      emit(Json{{"verifies", ok}}, out_path);
      return ok ? kOk : kNegative;
    }
    if (bee_decide->parsed()) {
      const NonNegMatrix a = read_matrix(a_path);
      const NonNegMatrix b = read_matrix(b_path);
      try {
        const DecideResult r = decide_balanced_elementary(a, b, bounds_from(m_max, cap, budget, sink_free));
        Json j{{"found", r.triple.has_value()}};
        if (r.triple) j["triple"] = to_json(*r.triple);
        if (!r.screen_failure.empty()) j["screen_failure"] = r.screen_failure;
        j["bounds"] = Json{{"m_max", r.inner_dim_max}, {"cap", r.entry_cap.str()}};
        j["s_candidates"] = r.s_candidates;
        emit(j, out_path);
        return r.triple ? kOk : kNegative;
      } catch (const SearchBudgetExceeded& e) {
        emit(Json{{"found", false}, {"error", e.what()}, {"count", e.count()}}, out_path);
        return kNegative;
      }
    }
    if (bsse->parsed()) {
      try {
        const BsseSearchResult r = bsse_search(read_matrix(a_path), read_matrix(b_path), search_depth,
                                               bounds_from(m_max, cap, budget, sink_free), states);
        Json j{{"found", r.certificate.has_value()}, {"explored", r.explored}, {"depth_reached", r.depth_reached}};
        if (r.certificate) j["certificate"] = to_json(*r.certificate);
        emit(j, out_path);
        return r.certificate ? kOk : kNegative;
      } catch (const SearchBudgetExceeded& e) {
        emit(Json{{"found", false}, {"error", e.what()}, {"explored", e.count()}}, out_path);
        return kNegative;
      }
    }
    if (cert_verify->parsed()) {
      const bool ok = verify_certificate(certificate_from_json(read_json(cert_path)));
      emit(Json{{"verifies", ok}}, out_path);
      return ok ? kOk : kNegative;
    }
    if (bm_check->parsed()) {
      const Graph s = read_graph(source_path);
      const Graph t = read_graph(target_path);
      const Json map_json = read_json(map_path);
      Json j;
      try {
        const BlockMap raw = block_map_from_json(map_json, s, t);
        const BlockMap bm = make_block_map(s, t, raw.memory(), raw.anticipation(), raw.table());
        const unsigned d = depth != 0 ? depth : bm.memory() + bm.anticipation() + 5;
        const SlidingReport sl = check_sliding(bm, d);
        const ConditionReport cr = check_conditions(bm, k_max != 0 ? k_max : bm.memory() + 3, big_k_max);
        const bool ok = sl.holds && cr.passes();
        j = Json{{"compatible", true},
                 {"bijective_table", table_is_bijective(bm)},
                 {"sliding", to_json(sl, s)},
                 {"conditions", to_json(cr, s, t)},
                 {"passes", ok}};
        emit(j, out_path);
        return ok ? kOk : kNegative;
      } catch (const ContractViolation& e) {
        emit(Json{{"compatible", false}, {"error", e.what()}, {"passes", false}}, out_path);
        return kNegative;
      }
    }
    if (psi->parsed()) {
      SplitHistory h = iterated_balanced_in_split(script_from_json(read_json(script_path)));
      if (backward) h = swap_sides(h);
      const BlockMap bm = psi_from_history(h);
      emit(Json{{"source", to_json(bm.source())}, {"target", to_json(bm.target())}, {"map", to_json(bm)}}, out_path);
      return kOk;
    }
    if (triple_map->parsed()) {
      const Graph e = read_graph(source_path);
      const Graph f = read_graph(target_path);
      const TripleMap tm = block_map_from_triple(e, f, triple_from_json(read_json(triple_path)));
      emit(Json{{"map", to_json(tm.map)}, {"pairing", to_json(tm.pairing, e, f)}}, out_path);
      return kOk;
    }
    if (reduce->parsed()) {
      const Graph s = read_graph(source_path);
      const Graph t = read_graph(target_path);
      const BlockMap raw = block_map_from_json(read_json(map_path), s, t);
      const ReducedMap r = reduce_continuity(make_block_map(s, t, raw.memory(), raw.anticipation(), raw.table()));
      emit(Json{{"bar", to_json(r.bar.graph)}, {"map", to_json(r.map)}}, out_path);
      return kOk;
    }
    if (decompose->parsed()) {
      const Graph s = read_graph(source_path);
      const Graph t = read_graph(target_path);
      const BlockMap h = block_map_from_json(read_json(map_path), s, t);
      const BlockMap hi = block_map_from_json(read_json(inverse_path), t, s);
      const Decomposition d = decompose_eventual_conjugacy(
          make_block_map(s, t, h.memory(), h.anticipation(), h.table()),
          make_block_map(t, s, hi.memory(), hi.anticipation(), hi.table()), lag, cont);
      emit(to_json(d), out_path);
      return d.all_pass() ? kOk : kNegative;
    }
    if (witness->parsed()) {
      WitnessOptions opts;
      opts.depth = depth;
      if (!script_path.empty()) {
        const EventualConjugacyWitness w = witness_from_script(script_from_json(read_json(script_path)), opts);
        emit(to_json(w), out_path);
        return w.report.accepted() ? kOk : kNegative;
      }
      if (source_path.empty()) throw CLI::ValidationError("witness needs --script or --e/--f");
      const MatrixWitnessResult r = witness_from_matrices(read_graph(source_path), read_graph(target_path), search_depth, {}, opts);
      if (!r.witness) {
        emit(Json{{"found", false}, {"explored", r.search.explored}, {"depth_reached", r.search.depth_reached}}, out_path);
        return kNegative;
      }
      emit(to_json(*r.witness), out_path);
      return r.witness->report.accepted() ? kOk : kNegative;
    }
    if (dot->parsed()) {
      emit(to_dot(read_graph(graph_path), name), out_path);
      return kOk;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
