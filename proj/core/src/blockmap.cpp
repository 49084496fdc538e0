#include "evconj/blockmap.hpp"

#include <algorithm>
#include <set>

#include "evconj/errors.hpp"

namespace evconj {

namespace {

std::string describe(const Graph& g, const Path& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += p[i] < g.edge_count() ? g.edge_id(p[i]) : "?";
  }
  return out + "]";
}

Path slice(const Path& p, std::size_t from, std::size_t len) {
  return Path(p.begin() + static_cast<std::ptrdiff_t>(from),
              p.begin() + static_cast<std::ptrdiff_t>(from + len));
}

}  // namespace

BlockMap BlockMap::unchecked(Graph source, Graph target, unsigned l, unsigned c, BlockTable table) {
  BlockMap bm;
  bm.source_ = std::move(source);
  bm.target_ = std::move(target);
  bm.l_ = l;
  bm.c_ = c;
  bm.table_ = std::move(table);
  return bm;
}

const Path& BlockMap::at(const Path& x) const {
  auto it = table_.find(x);
  if (it == table_.end()) throw ContractViolation("block map has no entry for " + describe(source_, x));
  return it->second;
}

BlockMap make_block_map(Graph source, Graph target, unsigned l, unsigned c, BlockTable table) {
  require_no_sinks(source, "block map source");
  require_no_sinks(target, "block map target");
  const std::size_t w = 1 + l + c;
  const auto domain = paths_of_length(source, w);
  for (const auto& x : domain) {
    auto it = table.find(x);
    if (it == table.end()) throw ContractViolation("block map: missing entry for " + describe(source, x));
    if (it->second.size() != 1 + l || !is_path(target, it->second)) {
      throw ContractViolation("block map: image of " + describe(source, x) + " is not a target path of length " +
                              std::to_string(1 + l));
    }
  }
  if (table.size() != domain.size()) throw ContractViolation("block map: table has entries outside E^{1+l+c}");
  for (const auto& x : paths_of_length(source, w + 1)) {
    const EdgeIndex a = table.at(slice(x, 0, w)).back();
    const EdgeIndex b = table.at(slice(x, 1, w)).back();
    if (target.dst(a) != target.src(b)) {
      throw ContractViolation("block map: incompatible on " + describe(source, x));
    }
  }
  return BlockMap::unchecked(std::move(source), std::move(target), l, c, std::move(table));
}

BlockMap identity_block_map(const Graph& g) {
  BlockTable t;
  for (const auto& x : paths_of_length(g, 1)) t.emplace(x, x);
  return make_block_map(g, g, 0, 0, std::move(t));
}

BlockMap higher_block_map(const Graph& g, std::size_t n) {
  if (n == 0) throw ContractViolation("higher_block_map: N must be at least 1");
  const HigherBlockGraph hb = higher_block_graph(g, n);
  BlockTable t;
  for (EdgeIndex e = 0; e < hb.graph.edge_count(); ++e) t.emplace(hb.edge_paths[e], Path{e});
  return make_block_map(g, hb.graph, 0, static_cast<unsigned>(n - 1), std::move(t));
}

Path apply_prefix(const BlockMap& bm, const Path& x) {
  const std::size_t w = bm.window();
  if (x.size() < w) {
    throw ContractViolation("apply_prefix: path of length " + std::to_string(x.size()) + " is shorter than the window " +
                            std::to_string(w));
  }
  Path out = bm.at(slice(x, 0, w));
  for (std::size_t t = 1; t + w <= x.size(); ++t) out.push_back(bm.at(slice(x, t, w)).back());
  return out;
}

BlockTable extend(const BlockMap& bm, unsigned i) {
  if (i == 0) return bm.table();
  BlockTable out;
  for (const auto& x : paths_of_length(bm.source(), bm.window() + i)) out.emplace(x, apply_prefix(bm, x));
  return out;
}

SlidingReport check_sliding(const BlockMap& bm, unsigned depth) {
  SlidingReport rep;
  rep.depth = depth;
  if (depth < bm.window() + 1) {
    throw ContractViolation("check_sliding: depth must be at least l+c+2 = " + std::to_string(bm.window() + 1));
  }
  const std::size_t l = bm.memory();
  for (const auto& x : paths_of_length(bm.source(), depth)) {
    const Path hx = apply_prefix(bm, x);
    const Path hsx = apply_prefix(bm, slice(x, 1, x.size() - 1));
    if (!is_path(bm.target(), hx)) {
      rep.holds = false;
      rep.counterexample = x;
      rep.detail = "image " + describe(bm.target(), hx) + " is not a path";
      return rep;
    }
    if (!std::equal(hx.begin() + static_cast<std::ptrdiff_t>(l + 1), hx.end(),
                    hsx.begin() + static_cast<std::ptrdiff_t>(l), hsx.end())) {
      rep.holds = false;
      rep.counterexample = x;
      rep.detail = "shifted images differ: " + describe(bm.target(), hx) + " vs " + describe(bm.target(), hsx);
      return rep;
    }
  }
  return rep;
}

bool ConditionReport::surjective() const {
  return std::all_of(surjectivity.begin(), surjectivity.end(), [](const auto& r) { return r.holds; });
}

bool ConditionReport::injective() const {
  return std::all_of(injectivity.begin(), injectivity.end(), [](const auto& r) { return r.min_k.has_value(); });
}

ConditionReport check_conditions(const BlockMap& bm, unsigned k_max, unsigned big_k_max) {
  const unsigned l = bm.memory();
  const unsigned c = bm.anticipation();
  if (k_max < l) throw ContractViolation("check_conditions: k_max must be at least l");
  ConditionReport rep;
  rep.k_max = k_max;
  rep.big_k_max = big_k_max;
  for (unsigned k = l; k <= k_max; ++k) {
    SurjectivityResult s;
    s.k = k;
    std::set<Path> image;
    for (const auto& [x, y] : extend(bm, k - l)) image.insert(y);
    s.holds = true;
    for (const auto& beta : paths_of_length(bm.target(), 1 + k)) {
      if (!image.contains(beta)) {
        s.holds = false;
        s.missing = beta;
        break;
      }
    }
    rep.surjectivity.push_back(std::move(s));

    InjectivityResult inj;
    inj.k = k;
    inj.bound = big_k_max;
    const unsigned lowest = l + c > k ? l + c - k : 0;
    for (unsigned big_k = lowest; big_k <= big_k_max; ++big_k) {
      std::map<Path, Path> seen;  // image -> prefix of length 1+k
      std::optional<std::pair<Path, Path>> clash;
      for (const auto& x : paths_of_length(bm.source(), 1 + k + big_k)) {
        const Path y = apply_prefix(bm, x);
        auto [it, fresh] = seen.emplace(y, x);
        if (!fresh && !std::equal(x.begin(), x.begin() + 1 + k, it->second.begin())) {
          clash = std::make_pair(it->second, x);
          break;
        }
      }
      if (!clash) {
        inj.min_k = big_k;
        break;
      }
      inj.counterexample = clash;
    }
    if (inj.min_k) inj.counterexample.reset();
    rep.injectivity.push_back(std::move(inj));
  }
  return rep;
}

bool table_is_bijective(const BlockMap& bm) {
  std::set<Path> image;
  for (const auto& [x, y] : bm.table()) {
    if (!image.insert(y).second) return false;
  }
  return image.size() == paths_of_length(bm.target(), 1 + bm.memory()).size();
}

BlockMap compose(const BlockMap& first, const BlockMap& second) {
  if (!(first.target() == second.source())) {
    throw ContractViolation("compose: target of the first map is not the source of the second");
  }
  const unsigned l = first.memory() + second.memory();
  const unsigned c = first.anticipation() + second.anticipation();
  BlockTable t;
  for (const auto& x : paths_of_length(first.source(), 1 + l + c)) {
    t.emplace(x, apply_prefix(second, apply_prefix(first, x)));
  }
  return make_block_map(first.source(), second.target(), l, c, std::move(t));
}

SplitHistory swap_sides(const SplitHistory& h) {
  SplitHistory out;
  out.base = h.base;
  for (const auto& s : h.steps) out.steps.push_back({s.f, s.e, s.triple.reversed()});
  return out;
}

namespace {

// The unique path of rec.result over `parent` (a path of rec.source) whose first edge
// is copy `first_copy` of parent[0]; empty when no such path exists.
std::optional<Path> lift(const SplitRecord& rec, const Path& parent, unsigned first_copy) {
  const Graph& g = rec.source;
  const Graph& h = rec.result;
  Path out;
  unsigned copy = first_copy;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    const auto e = h.find_edge(copy_name(g.edge_id(parent[i]), copy));
    if (!e) return std::nullopt;
    if (i > 0 && h.dst(out.back()) != h.src(*e)) return std::nullopt;
    out.push_back(*e);
    // The next edge must leave the range of this one.
    copy = rec.vertex_copy[h.dst(*e)];
  }
  return out;
}

Path project(const SplitRecord& rec, const Path& p) {
  Path out;
  out.reserve(p.size());
  for (EdgeIndex e : p) out.push_back(rec.edge_parent[e]);
  return out;
}

}  // namespace

std::vector<BlockMap> psi_tower(const SplitHistory& h) {
  std::vector<BlockMap> tower{identity_block_map(h.base)};
  for (std::size_t j = 1; j <= h.length(); ++j) {
    const SplitRecord& re = h.steps[j - 1].e;
    const SplitRecord& rf = h.steps[j - 1].f;
    const BlockTable below = extend(tower.back(), 1);
    BlockTable t;
    for (const auto& p : paths_of_length(re.result, j + 1)) {
      const Path& image_below = below.at(project(re, p));
      auto up = lift(rf, image_below, re.edge_copy[p[0]]);
      if (!up || rf.result.edge_id((*up)[0]) != re.result.edge_id(p[0])) {
        throw ConsistencyError("psi: no lift at level " + std::to_string(j) + " for " + describe(re.result, p));
      }
      t.emplace(p, std::move(*up));
    }
    tower.push_back(BlockMap::unchecked(re.result, rf.result, static_cast<unsigned>(j), 0, std::move(t)));
  }
  return tower;
}

bool check_intertwining(const SplitHistory& h, const std::vector<BlockMap>& tower) {
  if (tower.size() != h.length() + 1) return false;
  for (std::size_t j = 1; j <= h.length(); ++j) {
    const SplitRecord& re = h.steps[j - 1].e;
    const SplitRecord& rf = h.steps[j - 1].f;
    const BlockTable below = extend(tower[j - 1], 1);
    for (const auto& [p, y] : tower[j].table()) {
      if (below.at(project(re, p)) != project(rf, y)) return false;
    }
  }
  return true;
}

BlockMap psi_from_history(const SplitHistory& h) {
  if (h.length() == 0) throw ContractViolation("psi_from_history: history has no steps");
  auto tower = psi_tower(h);
  if (!check_intertwining(h, tower)) throw ConsistencyError("psi: intertwining identity fails");
  const BlockMap& top = tower.back();
  BlockMap checked = make_block_map(top.source(), top.target(), top.memory(), 0, top.table());
  if (!table_is_bijective(checked)) throw ConsistencyError("psi: table is not a bijection");
  return checked;
}

ReducedMap reduce_continuity(const BlockMap& bm) {
  const unsigned c = bm.anticipation();
  ReducedMap out;
  if (c == 0) {
    out.bar = higher_block_graph(bm.source(), 1);
    out.map = bm;
    out.to_bar = identity_block_map(bm.source());
    return out;
  }
  out.bar = higher_block_graph(bm.source(), c + 1);
  const Graph& bar = out.bar.graph;
  BlockTable t;
  for (const auto& p : paths_of_length(bar, 1 + bm.memory())) {
    Path under = out.bar.edge_paths[p[0]];
    for (std::size_t i = 1; i < p.size(); ++i) under.push_back(out.bar.edge_paths[p[i]].back());
    t.emplace(p, bm.at(under));
  }
  out.map = make_block_map(bar, bm.target(), bm.memory(), 0, std::move(t));
  out.to_bar = higher_block_map(bm.source(), c + 1);
  return out;
}

}  // namespace evconj
