#include "evconj/serialize.hpp"

#include <limits>

#include "evconj/errors.hpp"

namespace evconj {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw StructuralError(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::string str(const Json& j, const char* what) {
  if (!j.is_string()) throw StructuralError(std::string("field '") + what + "' must be a string");
  return j.get<std::string>();
}

Json integer(const Integer& v) {
  if (v <= std::numeric_limits<std::int64_t>::max()) return static_cast<std::int64_t>(v);
  return v.str();
}

Integer integer_from(const Json& j) {
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) throw StructuralError("negative matrix entry " + std::to_string(v));
    return Integer(v);
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw StructuralError("matrix entry '" + s + "' is not a nonnegative integer");
    }
    return Integer(s);
  }
  throw StructuralError("matrix entries must be integers");
}

Json path_json(const Graph& g, const Path& p) {
  Json out = Json::array();
  for (EdgeIndex e : p) out.push_back(g.edge_id(e));
  return out;
}

Path path_from(const Graph& g, const Json& j) {
  if (!j.is_array()) throw StructuralError("a path must be an array of edge ids");
  std::vector<EdgeId> ids;
  for (const auto& e : j) ids.push_back(str(e, "edge id"));
  return path_from_ids(g, ids);
}

Json cells_json(const Cells& cells) {
  Json out = Json::array();
  for (const auto& c : cells) out.push_back(c);
  return out;
}

Cells cells_from(const Json& j, const char* what) {
  if (!j.is_array()) throw StructuralError(std::string("field '") + what + "' must be an array of arrays");
  Cells out;
  for (const auto& c : j) {
    if (!c.is_array()) throw StructuralError(std::string("field '") + what + "' must be an array of arrays");
    std::vector<EdgeId> cell;
    for (const auto& e : c) cell.push_back(str(e, what));
    out.push_back(std::move(cell));
  }
  return out;
}

}  // namespace

Json to_json(const Graph& g) {
  Json j;
  j["vertices"] = g.vertices();
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back(Json{{"id", e.id}, {"src", e.src}, {"dst", e.dst}});
  j["edges"] = std::move(edges);
  return j;
}

Graph graph_from_json(const Json& j) {
  const Json& vs = field(j, "vertices");
  const Json& es = field(j, "edges");
  if (!vs.is_array() || !es.is_array()) throw StructuralError("'vertices' and 'edges' must be arrays");
  std::vector<VertexId> vertices;
  for (const auto& v : vs) vertices.push_back(str(v, "vertices"));
  std::vector<EdgeSpec> edges;
  for (const auto& e : es) {
    edges.push_back({str(field(e, "id"), "id"), str(field(e, "src"), "src"), str(field(e, "dst"), "dst")});
  }
  return Graph(std::move(vertices), std::move(edges));
}

Json to_json(const NonNegMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer(m(r, c)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

NonNegMatrix matrix_from_json(const Json& j) {
  const Json& entries = field(j, "entries");
  if (!entries.is_array()) throw StructuralError("'entries' must be an array of rows");
  std::vector<std::vector<Integer>> rows;
  for (const auto& row : entries) {
    if (!row.is_array()) throw StructuralError("'entries' must be an array of rows");
    std::vector<Integer> r;
    for (const auto& v : row) r.push_back(integer_from(v));
    rows.push_back(std::move(r));
  }
  NonNegMatrix m = NonNegMatrix::from_rows(rows);
  if (j.contains("rows") && j.at("rows").get<std::size_t>() != m.rows()) {
    throw StructuralError("'rows' does not match the number of entry rows");
  }
  if (j.contains("cols") && !rows.empty() && j.at("cols").get<std::size_t>() != m.cols()) {
    throw StructuralError("'cols' does not match the entry row length");
  }
  return m;
}

Json to_json(const BeeTriple& t) {
  return Json{{"r_a", to_json(t.r_a)}, {"s", to_json(t.s)}, {"r_b", to_json(t.r_b)}};
}

BeeTriple triple_from_json(const Json& j) {
  return {matrix_from_json(field(j, "r_a")), matrix_from_json(field(j, "s")), matrix_from_json(field(j, "r_b"))};
}

Json to_json(const BsseCertificate& c) {
  Json ms = Json::array();
  for (const auto& m : c.matrices) ms.push_back(to_json(m));
  Json links = Json::array();
  for (const auto& t : c.links) links.push_back(to_json(t));
  return Json{{"matrices", std::move(ms)}, {"links", std::move(links)}};
}

BsseCertificate certificate_from_json(const Json& j) {
  BsseCertificate c;
  for (const auto& m : field(j, "matrices")) c.matrices.push_back(matrix_from_json(m));
  for (const auto& t : field(j, "links")) c.links.push_back(triple_from_json(t));
  return c;
}

Json to_json(const SplitScript& s) {
  Json steps = Json::array();
  for (const auto& st : s.steps) {
    steps.push_back(Json{{"vertex", st.vertex}, {"cells_E", cells_json(st.cells_e)}, {"cells_F", cells_json(st.cells_f)}});
  }
  return Json{{"base", to_json(s.base)}, {"steps", std::move(steps)}};
}

SplitScript script_from_json(const Json& j) {
  SplitScript s;
  s.base = graph_from_json(field(j, "base"));
  for (const auto& st : field(j, "steps")) {
    s.steps.push_back({str(field(st, "vertex"), "vertex"), cells_from(field(st, "cells_E"), "cells_E"),
                       cells_from(field(st, "cells_F"), "cells_F")});
  }
  return s;
}

Json to_json(const SplitRecord& r) {
  Json labels = Json::array();
  for (VertexIndex w = 0; w < r.result.vertex_count(); ++w) {
    labels.push_back(Json{{"vertex", r.result.vertex(w)}, {"parent", r.source.vertex(r.vertex_parent[w])}, {"copy", r.vertex_copy[w]}});
  }
  return Json{{"kind", r.kind == SplitKind::out ? "out" : "in"},
              {"vertex", r.vertex},
              {"cells", cells_json(r.cells)},
              {"result", to_json(r.result)},
              {"division", to_json(r.division)},
              {"edge_matrix", to_json(r.edge_matrix)},
              {"labels", std::move(labels)},
              {"factorization_holds", r.factorization_holds()}};
}

Json to_json(const BlockMap& bm) {
  Json entries = Json::array();
  for (const auto& [x, y] : bm.table()) {
    entries.push_back(Json{{"in", path_json(bm.source(), x)}, {"out", path_json(bm.target(), y)}});
  }
  return Json{{"l", bm.memory()}, {"c", bm.anticipation()}, {"entries", std::move(entries)}};
}

BlockMap block_map_from_json(const Json& j, const Graph& source, const Graph& target) {
  const unsigned l = field(j, "l").get<unsigned>();
  const unsigned c = field(j, "c").get<unsigned>();
  BlockTable table;
  for (const auto& e : field(j, "entries")) {
    table.emplace(path_from(source, field(e, "in")), path_from(target, field(e, "out")));
  }
  return BlockMap::unchecked(source, target, l, c, std::move(table));
}

Json to_json(const SlidingReport& r, const Graph& source) {
  Json j{{"holds", r.holds}, {"depth", r.depth}};
  if (r.counterexample) {
    j["counterexample"] = path_json(source, *r.counterexample);
    j["detail"] = r.detail;
  }
  return j;
}

Json to_json(const ConditionReport& r, const Graph& source, const Graph& target) {
  Json surj = Json::array();
  for (const auto& s : r.surjectivity) {
    Json e{{"k", s.k}, {"holds", s.holds}};
    if (s.missing) e["missing"] = path_json(target, *s.missing);
    surj.push_back(std::move(e));
  }
  Json inj = Json::array();
  for (const auto& i : r.injectivity) {
    Json e{{"k", i.k}, {"min_K", i.min_k ? Json(*i.min_k) : Json(nullptr)}, {"K_bound", i.bound}};
    if (i.counterexample) {
      e["counterexample"] = Json::array({path_json(source, i.counterexample->first), path_json(source, i.counterexample->second)});
    }
    inj.push_back(std::move(e));
  }
  return Json{{"k_max", r.k_max},
              {"K_max", r.big_k_max},
              {"surjective", r.surjective()},
              {"injective", r.injective()},
              {"surjectivity", std::move(surj)},
              {"injectivity", std::move(inj)}};
}

Json to_json(const TriplePairing& p, const Graph& e, const Graph& f) {
  auto aux = [](const AuxEdge& a) { return Json::array({a.from, a.to, a.copy}); };
  Json ej = Json::array();
  for (EdgeIndex i = 0; i < p.e_edges.size(); ++i) {
    ej.push_back(Json{{"edge", e.edge_id(i)}, {"s", aux(p.e_edges[i].first)}, {"r", aux(p.e_edges[i].second)}});
  }
  Json fj = Json::array();
  for (EdgeIndex i = 0; i < p.f_edges.size(); ++i) {
    fj.push_back(Json{{"edge", f.edge_id(i)}, {"s", aux(p.f_edges[i].first)}, {"r", aux(p.f_edges[i].second)}});
  }
  Json mj = Json::array();
  for (const auto& m : p.middle_edges) {
    mj.push_back(Json{{"edge", Json::array({m.from, m.to, m.copy})},
                      {"r_a", aux(m.r_e)},
                      {"s_a", aux(m.s_e)},
                      {"r_b", aux(m.r_f)},
                      {"s_b", aux(m.s_f)}});
  }
  return Json{{"E_edges", std::move(ej)}, {"F_edges", std::move(fj)}, {"middle_edges", std::move(mj)}};
}

Json to_json(const WitnessReport& r, const Graph& source, const Graph& target) {
  Json j{{"depth", r.depth},
         {"accepted", r.accepted()},
         {"forward_compatible", r.forward_compatible},
         {"backward_compatible", r.backward_compatible},
         {"forward_sliding", to_json(r.forward_sliding, source)},
         {"backward_sliding", to_json(r.backward_sliding, target)},
         {"forward_conditions", to_json(r.forward_conditions, source, target)},
         {"backward_conditions", to_json(r.backward_conditions, target, source)},
         {"roundtrip_forward", Json{{"holds", r.roundtrip_forward.holds}, {"depth", r.roundtrip_forward.depth}}},
         {"roundtrip_backward", Json{{"holds", r.roundtrip_backward.holds}, {"depth", r.roundtrip_backward.depth}}}};
  if (r.roundtrip_forward.counterexample) j["roundtrip_forward"]["counterexample"] = path_json(source, *r.roundtrip_forward.counterexample);
  if (r.roundtrip_backward.counterexample) j["roundtrip_backward"]["counterexample"] = path_json(target, *r.roundtrip_backward.counterexample);
  j["certificate_verifies"] = r.certificate_verifies ? Json(*r.certificate_verifies) : Json(nullptr);
  j["failures"] = r.failures;
  return j;
}

Json to_json(const EventualConjugacyWitness& w) {
  const Graph& e = w.forward.source();
  const Graph& f = w.forward.target();
  Json j;
  j["manifest"] = Json{{"l", w.l}, {"c", w.c}, {"depth", w.report.depth}, {"accepted", w.report.accepted()}};
  j["E"] = to_json(e);
  j["F"] = to_json(f);
  j["forward"] = to_json(w.forward);
  j["backward"] = to_json(w.backward);
  j["certificate"] = w.certificate ? to_json(*w.certificate) : Json(nullptr);
  j["script"] = w.script ? to_json(*w.script) : Json(nullptr);
  j["report"] = to_json(w.report, e, f);
  return j;
}

Json to_json(const ElementaryChain& c) {
  Json links = Json::array();
  for (const auto& l : c.links) {
    links.push_back(Json{{"label", l.label},
                         {"base", to_json(l.split.e.source)},
                         {"vertex", l.split.e.vertex},
                         {"cells_A", cells_json(l.split.e.cells)},
                         {"cells_B", cells_json(l.split.f.cells)},
                         {"A_graph", to_json(l.split.e.result)},
                         {"B_graph", to_json(l.split.f.result)},
                         {"order", l.order},
                         {"A", to_json(l.a)},
                         {"B", to_json(l.b)},
                         {"triple", to_json(l.triple)}});
  }
  return Json{{"g_prime", to_json(c.g_prime)},
              {"attached_sources", c.attached_sources},
              {"links", std::move(links)},
              {"certificate", to_json(c.certificate())}};
}

Json to_json(const Decomposition& d) {
  auto graphs = [](const std::vector<WindowGraph>& v) {
    Json a = Json::array();
    for (const auto& w : v) a.push_back(to_json(w.graph));
    return a;
  };
  Json rungs = Json::array();
  for (const auto& r : d.rungs) {
    Json e{{"level", r.level},
           {"E_in_split", r.e_in_split},
           {"F_in_split", r.f_in_split},
           {"fibers_balanced", r.fibers_balanced},
           {"passes", r.passes()}};
    if (r.triple) {
      e["triple"] = to_json(*r.triple);
      e["triple_verifies"] = r.triple_verifies;
    }
    rungs.push_back(std::move(e));
  }
  Json out_rungs = Json::array();
  for (const auto& r : d.out_rungs) {
    out_rungs.push_back(Json{{"step", r.step}, {"E_out_split", r.e_out_split}, {"F_out_split", r.f_out_split}});
  }
  return Json{{"l", d.l},
              {"c", d.c},
              {"depth", d.depth},
              {"all_pass", d.all_pass()},
              {"base", to_json(d.base.graph)},
              {"E_ladder", graphs(d.e_ladder)},
              {"F_ladder", graphs(d.f_ladder)},
              {"rungs", std::move(rungs)},
              {"E_out_ladder", graphs(d.e_out_ladder)},
              {"F_out_ladder", graphs(d.f_out_ladder)},
              {"out_rungs", std::move(out_rungs)},
              {"E_matches_higher_block", d.e_matches_higher_block},
              {"F_matches_higher_block", d.f_matches_higher_block},
              {"ladders_meet", d.ladders_meet}};
}

Cells parse_cells(const std::string& text) {
  Cells out(1);
  std::string current;
  auto flush = [&] {
    const auto b = current.find_first_not_of(" \t");
    if (b != std::string::npos) {
      const auto e = current.find_last_not_of(" \t");
      out.back().push_back(current.substr(b, e - b + 1));
    } else if (!current.empty() || (!out.back().empty())) {
      throw StructuralError("empty edge id in cell list '" + text + "'");
    }
    current.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == ',') {
      if (current.find_first_not_of(" \t") == std::string::npos) throw StructuralError("empty edge id in cell list '" + text + "'");
      flush();
    } else if (ch == '|') {
      if (current.find_first_not_of(" \t") != std::string::npos) flush();
      else if (!out.back().empty()) throw StructuralError("dangling ',' in cell list '" + text + "'");
      current.clear();
      out.emplace_back();
    } else {
      current += ch;
    }
  }
  if (current.find_first_not_of(" \t") != std::string::npos) flush();
  else if (!out.back().empty()) throw StructuralError("dangling ',' in cell list '" + text + "'");
  return out;
}

std::string format_cells(const Cells& cells) {
  std::string out;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (c) out += '|';
    for (std::size_t i = 0; i < cells[c].size(); ++i) {
      if (i) out += ',';
      out += cells[c][i];
    }
  }
  return out;
}

}  // namespace evconj
