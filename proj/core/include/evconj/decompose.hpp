#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evconj/blockmap.hpp"

namespace evconj {

/// Graph whose vertices are realizable window pairs (x-window, y-window) with h(x) = y.
/// Vertex ids are `x ids|y ids` (ids joined by '.'); an edge joins a pair to the pair
/// of the shifted point, with the one-longer windows as its id.
struct WindowGraph {
  Graph graph;
  /// Per vertex index: the x-window (E-path) and y-window (F-path).
  std::vector<std::pair<Path, Path>> windows;
};

struct RungCheck {
  std::size_t level = 0;  // E_(level+1) over E_(level), F_(level+1) over F_(level)
  bool e_in_split = false;
  bool f_in_split = false;
  /// Over every vertex of G, E_(level+1) and F_(level+1) have equally many vertices.
  bool fibers_balanced = false;
  /// For level 0: the triple (R_E, S, R_F) of E_(1), F_(1) over G with fibers paired in
  /// window order, and whether it verifies.
  std::optional<BeeTriple> triple;
  bool triple_verifies = false;
  std::string detail;

  bool passes() const {
    return e_in_split && f_in_split && fibers_balanced && (level != 0 || triple_verifies);
  }
};

struct OutRungCheck {
  std::size_t step = 0;  // E^(l+step+1) over E^(l+step)
  bool e_out_split = false;
  bool f_out_split = false;
};

struct Decomposition {
  unsigned l = 0;
  unsigned c = 0;
  unsigned depth = 0;
  WindowGraph base;
  /// E_(j), F_(j) for j = 0..l; E_(0) = F_(0) = base.
  std::vector<WindowGraph> e_ladder;
  std::vector<WindowGraph> f_ladder;
  std::vector<RungCheck> rungs;
  /// E^(l+i), F^(l+i) for i = 0..2c.
  std::vector<WindowGraph> e_out_ladder;
  std::vector<WindowGraph> f_out_ladder;
  std::vector<OutRungCheck> out_rungs;
  /// E^(l) equals E^[l+2c+2] under the x-window map (same for F).
  bool e_matches_higher_block = false;
  bool f_matches_higher_block = false;
  /// E_(l) = E^(l+2c) and F_(l) = F^(l+2c).
  bool ladders_meet = false;

  bool all_pass() const;
};

/// Builds the base graph G, the in-split ladders E_(j), F_(j) and the out-split ladders
/// from an eventual conjugacy h with inverse h_inv (both lag l, common window constant
/// c). Every ladder step is checked as a split via its vertex projection.
///
/// Throws ContractViolation with a counterexample prefix when h_inv o h or h o h_inv is
/// not the identity on prefixes at the tested depth, or when a shifted window pair
/// falls outside the enumerated vertex set.
Decomposition decompose_eventual_conjugacy(const BlockMap& h, const BlockMap& h_inv, unsigned l, unsigned c);

/// H is an in-split of G along the vertex projection pi (possibly at several vertices):
/// A_H = D^t Em and A_G = Em D^t with D given by pi.
bool is_in_split_by(const Graph& g, const Graph& h, const std::vector<VertexIndex>& pi);
/// Out-split version: A_G = D Em and A_H = Em D.
bool is_out_split_by(const Graph& g, const Graph& h, const std::vector<VertexIndex>& pi);

}  // namespace evconj
