#include "circast/json_io.hpp"

#include <algorithm>

namespace circast::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key \"") + key + "\"");
  return *it;
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < -(1LL << 30) || v > (1LL << 30)) bad(std::string(what) + " out of range");
  return static_cast<int>(v);
}

int read_n(const json& j) {
  const int n = as_int(field(j, "n"), "n");
  make_domain(n);
  return n;
}

Pair pair_from(const json& j) {
  if (!j.is_array() || j.size() != 2) bad("a pair must be [i,j]");
  return Pair{as_int(j[0], "pair entry"), as_int(j[1], "pair entry")};
}

PairSet pairs_from(int n, const json& list) {
  if (!list.is_array()) bad("expected a list of pairs");
  PairSet out(n);
  for (const json& p : list) {
    const Pair pair = pair_from(p);
    if (!PairSet::in_universe(n, pair)) {
      throw Error(ErrorCode::InvalidPartition, "pair " + to_string(pair) + " is not in X");
    }
    if (out.contains(pair)) throw Error(ErrorCode::InvalidPartition, "pair " + to_string(pair) + " repeated");
    out.insert(pair);
  }
  return out;
}

TernaryRelation triples_from(int n, const json& list) {
  if (!list.is_array()) bad("expected a list of triples");
  std::vector<Triple> triples;
  for (const json& t : list) {
    if (!t.is_array() || t.size() != 3) bad("a triple must be [x,y,z]");
    triples.push_back({as_int(t[0], "triple entry"), as_int(t[1], "triple entry"), as_int(t[2], "triple entry")});
  }
  const std::size_t listed = triples.size();
  TernaryRelation r(n, std::move(triples));
  if (r.size() != listed) throw Error(ErrorCode::InvalidPartition, "duplicate triple in relation");
  return r;
}

json pair_list(const PairSet& set) {
  json out = json::array();
  set.for_each([&](Pair p) { out.push_back(to_json(p)); });
  return out;
}

json counts_by_point(const std::vector<int>& counts) {
  json out = json::object();
  for (std::size_t x = 0; x < counts.size(); ++x) out[std::to_string(x + 1)] = counts[x];
  return out;
}

json to_json(const RegularityWitness& w) {
  return json{{"axis", w.axis == RegularityWitness::Axis::Row ? "row" : "column"},
              {"value", w.value},
              {"count", w.count}};
}

json action_table(const std::array<std::vector<int>, 6>& action) {
  json out = json::object();
  for (Sym3 g : kSym3All) out[std::string(name(g))] = action[index_of(g)];
  return out;
}

}  // namespace

json to_json(Pair p) { return json::array({p.i, p.j}); }

json to_json(const PairSet& set) { return json{{"n", set.n()}, {"pairs", pair_list(set)}}; }

json to_json(const TernaryRelation& relation) {
  json triples = json::array();
  for (const Triple& t : relation.triples()) triples.push_back(json::array({t[0], t[1], t[2]}));
  return json{{"n", relation.n()}, {"triples", std::move(triples)}};
}

json to_json(const TriplePartition& partition) {
  json relations = json::array();
  for (int id = 0; id <= partition.m(); ++id) {
    json triples = json::array();
    for (const Triple& t : partition.relation(id).triples()) triples.push_back(json::array({t[0], t[1], t[2]}));
    relations.push_back(json{{"id", id}, {"triples", std::move(triples)}});
  }
  return json{{"n", partition.n()}, {"relations", std::move(relations)}};
}

json to_json(const IndexPartition& partition) {
  json parts = json::array();
  for (const PairSet& part : partition.parts()) parts.push_back(pair_list(part));
  return json{{"n", partition.n()}, {"parts", std::move(parts)}};
}

json to_json(const RegularityReport& report) {
  json out{{"ok", report.ok}};
  if (report.stats) {
    out["n_I"] = report.stats->n_I;
    out["row_counts"] = counts_by_point(report.stats->row_counts);
    out["col_counts"] = counts_by_point(report.stats->col_counts);
  }
  if (report.witness) out["witness"] = to_json(*report.witness);
  return out;
}

json to_json(const ASTRegularityReport& report) {
  json out{{"ok", report.ok}};
  json parts = json::array();
  for (const RegularityReport& r : report.part_stats) parts.push_back(to_json(r));
  out["parts"] = std::move(parts);
  out["action"] = report.action ? action_table(*report.action) : json(nullptr);
  if (report.constants) {
    const std::size_t k = report.constants->parts();
    json table = json::array();
    for (std::size_t i = 0; i < k; ++i) {
      json by_j = json::array();
      for (std::size_t j = 0; j < k; ++j) {
        json by_k = json::array();
        for (std::size_t kk = 0; kk < k; ++kk) {
          json by_l = json::array();
          for (std::size_t l = 0; l < k; ++l) by_l.push_back(report.constants->at(i, j, kk, l));
          by_k.push_back(std::move(by_l));
        }
        by_j.push_back(std::move(by_k));
      }
      table.push_back(std::move(by_j));
    }
    out["constants"] = std::move(table);
  } else {
    out["constants"] = nullptr;
  }
  if (report.failure) {
    const RegularityFailure& f = *report.failure;
    json failure{{"condition", std::string(1, f.condition)}, {"parts", f.parts}};
    if (f.row_witness) failure["witness"] = to_json(*f.row_witness);
    if (f.element) failure["element"] = std::string(name(*f.element));
    if (!f.pairs.empty()) {
      json pairs = json::array();
      for (const ConstantWitness& w : f.pairs) pairs.push_back(json{{"pair", to_json(w.pair)}, {"count", w.count}});
      failure["pairs"] = std::move(pairs);
    }
    failure["message"] = f.message;
    out["failure"] = std::move(failure);
  } else {
    out["failure"] = nullptr;
  }
  return out;
}

json to_json(const StructureTensor& tensor) {
  json entries = json::array();
  for (const auto& [key, value] : tensor.p) {
    entries.push_back(json::array({key[0], key[1], key[2], key[3], value}));
  }
  return entries;
}

namespace {

json marginals(const StructureTensor& tensor) {
  auto by_id = [](const std::vector<int>& values) {
    json out = json::object();
    for (std::size_t k = 0; k < values.size(); ++k) out[std::to_string(k + 4)] = values[k];
    return out;
  };
  return json{{"n1", by_id(tensor.n1)}, {"n2", by_id(tensor.n2)}, {"n3", by_id(tensor.n3)}};
}

}  // namespace

json to_json(const ASTReport& report) {
  json out{{"ok", report.ok}};
  out["tensor"] = report.tensor ? to_json(*report.tensor) : json(nullptr);
  out["marginals"] = report.tensor ? marginals(*report.tensor) : json(nullptr);
  out["a3_action"] = report.a3_action ? action_table(*report.a3_action) : json(nullptr);
  out["symmetric"] = report.symmetric;
  json failures = json::array();
  for (const AxiomFailure& f : report.failures) {
    json entry{{"axiom", f.axiom}, {"relations", f.relations}};
    if (!f.triples.empty()) {
      json triples = json::array();
      for (const Triple& t : f.triples) triples.push_back(json::array({t[0], t[1], t[2]}));
      entry["triples"] = std::move(triples);
    }
    if (!f.pairs.empty()) entry["pairs"] = f.pairs;
    if (!f.counts.empty()) entry["counts"] = f.counts;
    entry["message"] = f.message;
    failures.push_back(std::move(entry));
  }
  out["failures"] = std::move(failures);
  return out;
}

json to_json(const ThinProfile& profile) {
  json out = json::array();
  for (CoordPair ab : kCoordPairs) {
    if (profile.has(ab)) out.push_back(std::string(name(ab)));
  }
  return out;
}

json to_json(const ThinWitness& witness) {
  json rho = json::object();
  for (std::size_t y = 0; y < witness.rho.size(); ++y) rho[std::to_string(y + 1)] = witness.rho[y];
  return json{{"ab", std::string(name(witness.ab))}, {"rho", std::move(rho)}, {"derangement", witness.derangement}};
}

json to_json(const MatchingDecomposition& decomposition) {
  json out = json::array();
  for (const PairSet& part : decomposition.parts) out.push_back(to_json(part));
  return out;
}

json to_json(const GroupSpec& group) {
  json generators = json::array();
  for (const Permutation& g : group.generators) generators.push_back(g.cycles());
  return json{{"n", group.n}, {"generators", std::move(generators)}};
}

json to_json(const SearchConfig& config) {
  json out{{"n", config.n}};
  out["max_nI"] = config.max_nI ? json(*config.max_nI) : json(nullptr);
  out["all_thin"] = config.require_all_thin;
  out["symmetric"] = config.require_symmetric;
  out["dedupe"] = config.dedupe == Dedupe::multiplier ? "multiplier" : "none";
  out["limit"] = config.limit ? json(*config.limit) : json(nullptr);
  out["timeout_ms"] = config.time_budget ? json(config.time_budget->count()) : json(nullptr);
  return out;
}

json to_json(const SearchResult& result, const SearchConfig& config) {
  json partitions = json::array();
  for (const SearchEntry& entry : result.partitions) {
    partitions.push_back(json{{"partition", to_json(entry.partition)}, {"report", to_json(entry.report)}});
  }
  return json{{"config", to_json(config)},
              {"complete", result.complete}, {"nodes", result.nodes}, {"partitions", std::move(partitions)}};
}

PairSet pair_set_from_json(const json& j) { return pairs_from(read_n(j), field(j, "pairs")); }

TernaryRelation relation_from_json(const json& j) { return triples_from(read_n(j), field(j, "triples")); }

TriplePartition triple_partition_from_json(const json& j) {
  const int n = read_n(j);
  const json& list = field(j, "relations");
  if (!list.is_array()) bad("\"relations\" must be a list");
  std::vector<std::pair<int, TernaryRelation>> entries;
  std::size_t with_id = 0;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const json& entry = list[k];
    int id = static_cast<int>(k);
    if (entry.is_object() && entry.contains("id")) {
      id = as_int(entry["id"], "relation id");
      ++with_id;
    }
    entries.emplace_back(id, triples_from(n, field(entry, "triples")));
  }
  if (with_id != 0 && with_id != entries.size()) bad("either every relation has an id or none does");
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].first == entries[k - 1].first) bad("duplicate relation id " + std::to_string(entries[k].first));
  }
  std::vector<TernaryRelation> relations;
  for (auto& e : entries) relations.push_back(std::move(e.second));
  return TriplePartition(n, std::move(relations));
}

IndexPartition index_partition_from_json(const json& j) {
  const int n = read_n(j);
  const json& list = field(j, "parts");
  if (!list.is_array()) bad("\"parts\" must be a list");
  std::vector<PairSet> parts;
  for (const json& part : list) parts.push_back(pairs_from(n, part));
  return IndexPartition(n, std::move(parts));
}

GroupSpec group_spec_from_json(const json& j) {
  const int n = read_n(j);
  const json& list = field(j, "generators");
  if (!list.is_array()) bad("\"generators\" must be a list");
  GroupSpec group{n, {}};
  for (const json& g : list) {
    if (!g.is_string()) bad("generators are cycle strings");
    group.generators.push_back(parse_cycles(g.get<std::string>(), n));
  }
  return group;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace circast::io
