#pragma once

// JSON forms of every value the CLI reads or writes. Parsing failures throw
// Error with ParseError (bad shape) or InvalidPartition (bad content).

#include <json.hpp>

#include "circast/astcheck.hpp"
#include "circast/circulant.hpp"
#include "circast/core.hpp"
#include "circast/groups.hpp"
#include "circast/search.hpp"
#include "circast/thin.hpp"

namespace circast::io {

using json = nlohmann::ordered_json;

json to_json(Pair p);
json to_json(const PairSet& set);
json to_json(const TernaryRelation& relation);
json to_json(const TriplePartition& partition);
json to_json(const IndexPartition& partition);
json to_json(const RegularityReport& report);
json to_json(const ASTRegularityReport& report);
json to_json(const StructureTensor& tensor);
json to_json(const ASTReport& report);
json to_json(const ThinProfile& profile);
json to_json(const ThinWitness& witness);
json to_json(const MatchingDecomposition& decomposition);
json to_json(const GroupSpec& group);
json to_json(const SearchConfig& config);
json to_json(const SearchResult& result, const SearchConfig& config);

PairSet pair_set_from_json(const json& j);
TernaryRelation relation_from_json(const json& j);
/// Relations may carry "id"; when they do they are ordered by id and
/// renumbered 0..m, otherwise input order is kept.
TriplePartition triple_partition_from_json(const json& j);
IndexPartition index_partition_from_json(const json& j);
GroupSpec group_spec_from_json(const json& j);

/// Parses text, mapping syntax errors to ParseError.
json parse(const std::string& text);

}  // namespace circast::io
