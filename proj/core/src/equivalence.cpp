#include "evconj/equivalence.hpp"

#include <algorithm>

#include "evconj/errors.hpp"

namespace evconj {

RoundtripReport check_roundtrip(const BlockMap& forward, const BlockMap& backward, unsigned depth) {
  RoundtripReport rep;
  rep.depth = depth;
  if (depth < forward.window() + backward.anticipation()) {
    throw ContractViolation("check_roundtrip: depth too small for the two windows");
  }
  for (const auto& x : paths_of_length(forward.source(), depth)) {
    const Path back = apply_prefix(backward, apply_prefix(forward, x));
    rep.compared = back.size();
    if (!std::equal(back.begin(), back.end(), x.begin())) {
      rep.holds = false;
      rep.counterexample = x;
      return rep;
    }
  }
  return rep;
}

namespace {

// A table that fails make_block_map cannot be trusted by the other checks.
bool compatible(const BlockMap& bm) {
  try {
    make_block_map(bm.source(), bm.target(), bm.memory(), bm.anticipation(), bm.table());
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

WitnessReport verify_witness(const EventualConjugacyWitness& w, unsigned depth, const WitnessOptions& opts) {
  WitnessReport r;
  r.depth = depth != 0 ? depth : (opts.depth != 0 ? opts.depth : w.l + w.c + 5);
  auto fail = [&](std::string msg) { r.failures.push_back(std::move(msg)); };

  r.forward_compatible = compatible(w.forward);
  r.backward_compatible = compatible(w.backward);
  if (!r.forward_compatible) fail("forward table is not a compatible block map");
  if (!r.backward_compatible) fail("backward table is not a compatible block map");
  if (!(w.forward.source() == w.backward.target()) || !(w.forward.target() == w.backward.source())) {
    fail("forward and backward maps do not connect the same graphs");
    return r;
  }
  try {
    r.forward_sliding = check_sliding(w.forward, r.depth);
    r.backward_sliding = check_sliding(w.backward, r.depth);
    if (!r.forward_sliding.holds) fail("forward sliding identity: " + r.forward_sliding.detail);
    if (!r.backward_sliding.holds) fail("backward sliding identity: " + r.backward_sliding.detail);
    r.forward_conditions = check_conditions(w.forward, w.forward.memory() + opts.k_extra, opts.big_k_max);
    r.backward_conditions = check_conditions(w.backward, w.backward.memory() + opts.k_extra, opts.big_k_max);
    if (!r.forward_conditions.surjective()) fail("forward surjectivity condition");
    if (!r.forward_conditions.injective()) fail("forward injectivity condition");
    if (!r.backward_conditions.surjective()) fail("backward surjectivity condition");
    if (!r.backward_conditions.injective()) fail("backward injectivity condition");
    const unsigned rt_depth = std::max<unsigned>(r.depth, static_cast<unsigned>(w.forward.window() + w.backward.anticipation()));
    r.roundtrip_forward = check_roundtrip(w.forward, w.backward, rt_depth);
    r.roundtrip_backward = check_roundtrip(w.backward, w.forward, rt_depth);
    if (!r.roundtrip_forward.holds) fail("backward(forward(x)) != x");
    if (!r.roundtrip_backward.holds) fail("forward(backward(y)) != y");
  } catch (const Error& e) {
    fail(std::string("check aborted: ") + e.what());
  }
  if (w.certificate) {
    try {
      r.certificate_verifies = verify_certificate(*w.certificate);
    } catch (const Error&) {
      r.certificate_verifies = false;
    }
    if (!*r.certificate_verifies) fail("certificate link does not verify");
  }
  return r;
}

EventualConjugacyWitness witness_from_script(const SplitScript& script, const WitnessOptions& opts) {
  EventualConjugacyWitness w;
  w.script = script;
  if (script.steps.empty()) {
    w.forward = identity_block_map(script.base);
    w.backward = w.forward;
    const NonNegMatrix a = adjacency_matrix(script.base);
    w.certificate = BsseCertificate{{a, a}, {BeeTriple{a, NonNegMatrix::identity(a.rows()), a}}};
  } else {
    const SplitHistory h = iterated_balanced_in_split(script);
    w.forward = psi_from_history(h);
    w.backward = psi_from_history(swap_sides(h));
    w.l = static_cast<unsigned>(h.length());
    if (h.length() == 1) {
      const auto& step = h.steps[0];
      w.certificate = BsseCertificate{{adjacency_matrix(step.e.result), adjacency_matrix(step.f.result)}, {step.triple}};
    } else {
      w.certificate = connect_by_elementary(script).certificate();
    }
  }
  w.report = verify_witness(w, 0, opts);
  return w;
}

MatrixWitnessResult witness_from_matrices(const Graph& e, const Graph& f, unsigned depth_max,
                                          const SearchBounds& bounds, const WitnessOptions& opts) {
  require_no_sinks(e, "witness_from_matrices (E)");
  require_no_sinks(f, "witness_from_matrices (F)");
  MatrixWitnessResult out;
  SearchBounds sink_free = bounds;
  sink_free.sink_free = true;
  out.search = bsse_search(adjacency_matrix(e), adjacency_matrix(f), depth_max, sink_free);
  if (!out.search.certificate) return out;
  const BsseCertificate& cert = *out.search.certificate;
  std::vector<Graph> graphs;
  for (std::size_t i = 0; i < cert.matrices.size(); ++i) {
    if (i == 0) graphs.push_back(e);
    else if (i + 1 == cert.matrices.size()) graphs.push_back(f);
    else graphs.push_back(graph_from_matrix(cert.matrices[i]));
  }
  for (std::size_t i = 1; i + 1 < graphs.size(); ++i) {
    if (graphs[i].has_sinks()) return out;  // a zero row cannot carry a block map
  }
  EventualConjugacyWitness w;
  const std::size_t k = cert.links.size();
  w.forward = block_map_from_triple(graphs[0], graphs[1], cert.links[0]).map;
  w.backward = block_map_from_triple(graphs[k], graphs[k - 1], cert.links[k - 1].reversed()).map;
  for (std::size_t i = 1; i < k; ++i) {
    w.forward = compose(w.forward, block_map_from_triple(graphs[i], graphs[i + 1], cert.links[i]).map);
    w.backward = compose(w.backward, block_map_from_triple(graphs[k - i], graphs[k - i - 1], cert.links[k - i - 1].reversed()).map);
  }
  w.l = static_cast<unsigned>(k);
  w.c = static_cast<unsigned>(k);
  w.certificate = cert;
  w.report = verify_witness(w, 0, opts);
  out.witness = std::move(w);
  return out;
}

}  // namespace evconj
