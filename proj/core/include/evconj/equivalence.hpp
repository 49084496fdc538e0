#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evconj/blockmap.hpp"
#include "evconj/intmat.hpp"
#include "evconj/moves.hpp"

namespace evconj {

struct RoundtripReport {
  bool holds = true;
  unsigned depth = 0;
  /// Number of leading positions compared (the length of back(forward(x))).
  std::size_t compared = 0;
  std::optional<Path> counterexample;
};

/// backward(forward(x)) agrees with x on every position it covers, for all source
/// paths x of length `depth`.
RoundtripReport check_roundtrip(const BlockMap& forward, const BlockMap& backward, unsigned depth);

struct WitnessOptions {
  /// Depth for the sliding and roundtrip checks; 0 means l + c + 5.
  unsigned depth = 0;
  /// Conditions are checked for k = l..l+k_extra.
  unsigned k_extra = 3;
  unsigned big_k_max = 4;
};

struct WitnessReport {
  unsigned depth = 0;
  bool forward_compatible = false;
  bool backward_compatible = false;
  SlidingReport forward_sliding;
  SlidingReport backward_sliding;
  ConditionReport forward_conditions;
  ConditionReport backward_conditions;
  RoundtripReport roundtrip_forward;   // E -> F -> E
  RoundtripReport roundtrip_backward;  // F -> E -> F
  /// Set when a certificate is attached.
  std::optional<bool> certificate_verifies;
  std::vector<std::string> failures;

  bool accepted() const { return failures.empty(); }
};

/// Eventual conjugacy between forward.source() and forward.target(), witnessed at a
/// finite depth. l and c are the common lag and anticipation of both maps.
struct EventualConjugacyWitness {
  BlockMap forward;
  BlockMap backward;
  unsigned l = 0;
  unsigned c = 0;
  std::optional<BsseCertificate> certificate;
  std::optional<SplitScript> script;
  WitnessReport report;
};

/// psi in both directions from a replayed script; certificate from the single step
/// (l = 1) or from connect_by_elementary (l >= 2). l = 0 gives the identity witness.
EventualConjugacyWitness witness_from_script(const SplitScript& script, const WitnessOptions& opts = {});

struct MatrixWitnessResult {
  std::optional<EventualConjugacyWitness> witness;
  BsseSearchResult search;
};

/// Searches for a balanced strong shift equivalence between A_E and A_F and turns each
/// link into a (1,1)-map via block_map_from_triple, composing them along the chain.
/// Intermediate matrices are realized by graph_from_matrix.
MatrixWitnessResult witness_from_matrices(const Graph& e, const Graph& f, unsigned depth_max,
                                          const SearchBounds& bounds = {}, const WitnessOptions& opts = {});

/// Re-runs every check at the given depth (0 means the witness's own depth).
WitnessReport verify_witness(const EventualConjugacyWitness& w, unsigned depth = 0,
                             const WitnessOptions& opts = {});

}  // namespace evconj
