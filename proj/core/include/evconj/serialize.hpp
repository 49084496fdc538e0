#pragma once

#include <string>

#include <json.hpp>

#include "evconj/blockmap.hpp"
#include "evconj/decompose.hpp"
#include "evconj/equivalence.hpp"
#include "evconj/graph.hpp"
#include "evconj/intmat.hpp"
#include "evconj/moves.hpp"

namespace evconj {

/// Field order in every document is fixed, so equal values serialize to equal bytes.
using Json = nlohmann::ordered_json;

/// Parse errors (missing fields, wrong types) throw StructuralError naming the field.
Json to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// Entries that do not fit in 64 bits are written as decimal strings.
Json to_json(const NonNegMatrix& m);
NonNegMatrix matrix_from_json(const Json& j);

Json to_json(const BeeTriple& t);
BeeTriple triple_from_json(const Json& j);

Json to_json(const BsseCertificate& c);
BsseCertificate certificate_from_json(const Json& j);

Json to_json(const SplitScript& s);
SplitScript script_from_json(const Json& j);

Json to_json(const SplitRecord& r);
Json to_json(const BlockMap& bm);
/// Edge ids are resolved against the given source and target graphs.
BlockMap block_map_from_json(const Json& j, const Graph& source, const Graph& target);

Json to_json(const SlidingReport& r, const Graph& source);
Json to_json(const ConditionReport& r, const Graph& source, const Graph& target);
Json to_json(const TriplePairing& p, const Graph& e, const Graph& f);
Json to_json(const WitnessReport& r, const Graph& source, const Graph& target);
Json to_json(const EventualConjugacyWitness& w);
Json to_json(const ElementaryChain& c);
Json to_json(const Decomposition& d);

/// Cells written as "e,f|g|" (cells split by '|', edges by ',').
Cells parse_cells(const std::string& text);
std::string format_cells(const Cells& cells);

}  // namespace evconj
