#include "circast/thin.hpp"

#include <cstdint>

#include "circast/circulant.hpp"

namespace circast {

namespace {

std::array<int, 3> positions(CoordPair ab) {
  switch (ab) {
    case CoordPair::p12: return {0, 1, 2};
    case CoordPair::p13: return {0, 2, 1};
    case CoordPair::p23: return {1, 2, 0};
  }
  return {0, 1, 2};
}

bool is_ab_thin(const TernaryRelation& relation, CoordPair ab) {
  const int n = relation.n();
  if (relation.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1)) return false;
  const auto [a, b, c] = positions(ab);
  std::vector<char> seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (const Triple& t : relation.triples()) {
    if (t[a] == t[b]) return false;
    char& slot = seen[static_cast<std::size_t>(t[a]) * static_cast<std::size_t>(n) + static_cast<std::size_t>(t[b])];
    if (slot) return false;
    slot = 1;
  }
  return true;
}

}  // namespace

std::string_view name(CoordPair ab) {
  switch (ab) {
    case CoordPair::p12: return "12";
    case CoordPair::p13: return "13";
    case CoordPair::p23: return "23";
  }
  return "?";
}

std::optional<CoordPair> parse_coord_pair(std::string_view text) {
  for (CoordPair ab : kCoordPairs) {
    if (name(ab) == text) return ab;
  }
  return std::nullopt;
}

bool ThinProfile::has(CoordPair ab) const {
  switch (ab) {
    case CoordPair::p12: return ab12;
    case CoordPair::p13: return ab13;
    case CoordPair::p23: return ab23;
  }
  return false;
}

ThinProfile thin_profile(const TernaryRelation& relation) {
  return ThinProfile{is_ab_thin(relation, CoordPair::p12), is_ab_thin(relation, CoordPair::p13),
                     is_ab_thin(relation, CoordPair::p23)};
}

ThinWitness thin_witness(const TernaryRelation& relation, CoordPair ab) {
  if (!is_ab_thin(relation, ab)) {
    throw Error(ErrorCode::NotThin, "relation is not " + std::string(name(ab)) + "-thin");
  }
  if (!is_circulant(relation)) {
    throw Error(ErrorCode::NotThin, "relation is not a 3-circulant");
  }
  const int n = relation.n();
  const auto [a, b, c] = positions(ab);
  ThinWitness w;
  w.ab = ab;
  w.rho.assign(static_cast<std::size_t>(n - 1), 0);
  for (const Triple& t : relation.triples()) {
    if (t[a] == 0) w.rho[static_cast<std::size_t>(t[b] - 1)] = t[c];
  }
  w.derangement = true;
  for (int y = 1; y < n; ++y) {
    const int image = w.rho[static_cast<std::size_t>(y - 1)];
    if (image == 0 || image == y) w.derangement = false;
  }
  return w;
}

TernaryRelation reconstruct_thin(int n, const ThinWitness& witness) {
  const auto [a, b, c] = positions(witness.ab);
  std::vector<Triple> triples;
  triples.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1));
  for (int x = 0; x < n; ++x) {
    for (int y = 1; y < n; ++y) {
      Triple t{};
      t[a] = x;
      t[b] = mod(x + y, n);
      t[c] = mod(x + witness.rho[static_cast<std::size_t>(y - 1)], n);
      triples.push_back(t);
    }
  }
  return TernaryRelation(n, std::move(triples));
}

namespace {

// Bipartite graph on left and right copies of {1..n-1}; row u is the
// adjacency bitset of left vertex u.
class BipartiteGraph {
 public:
  explicit BipartiteGraph(const PairSet& edges)
      : n_(edges.n()), words_((static_cast<std::size_t>(n_) + 63) / 64),
        rows_(static_cast<std::size_t>(n_) * words_, 0) {
    edges.for_each([&](Pair p) { set(p.i, p.j); });
  }

  bool has(int u, int v) const { return (rows_[offset(u, v)] >> (v & 63)) & 1u; }
  void set(int u, int v) { rows_[offset(u, v)] |= std::uint64_t{1} << (v & 63); }
  void clear(int u, int v) { rows_[offset(u, v)] &= ~(std::uint64_t{1} << (v & 63)); }

  /// Perfect matching as match_of_right[v] = u, or empty if none exists.
  std::vector<int> perfect_matching() const {
    std::vector<int> match_right(static_cast<std::size_t>(n_), 0);
    for (int u = 1; u < n_; ++u) {
      std::vector<char> visited(static_cast<std::size_t>(n_), 0);
      if (!augment(u, match_right, visited)) return {};
    }
    return match_right;
  }

 private:
  std::size_t offset(int u, int v) const {
    return static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v >> 6);
  }

  bool augment(int u, std::vector<int>& match_right, std::vector<char>& visited) const {
    for (int v = 1; v < n_; ++v) {
      if (!has(u, v) || visited[static_cast<std::size_t>(v)]) continue;
      visited[static_cast<std::size_t>(v)] = 1;
      const int owner = match_right[static_cast<std::size_t>(v)];
      if (owner == 0 || augment(owner, match_right, visited)) {
        match_right[static_cast<std::size_t>(v)] = u;
        return true;
      }
    }
    return false;
  }

  int n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
};

}  // namespace

MatchingDecomposition matching_decomposition(const PairSet& index_set) {
  const RegularityReport regular = regularity_stats(index_set);
  if (!regular.ok) throw Error(ErrorCode::NotRegular, "index set is not row/column regular");
  const int n = index_set.n();
  const int valency = regular.stats->n_I;

  BipartiteGraph graph(index_set);
  MatchingDecomposition out;
  for (int round = 0; round < valency; ++round) {
    const std::vector<int> match_right = graph.perfect_matching();
    if (match_right.empty()) throw Error(ErrorCode::InternalError, "regular bipartite graph without perfect matching");
    PairSet matching(n);
    for (int v = 1; v < n; ++v) {
      const int u = match_right[static_cast<std::size_t>(v)];
      matching.insert({u, v});
      graph.clear(u, v);
    }
    out.parts.push_back(std::move(matching));
  }

  PairSet covered(n);
  for (const PairSet& part : out.parts) {
    const RegularityReport r = regularity_stats(part);
    if (!r.ok || r.stats->n_I != 1 || part.intersects(covered)) {
      throw Error(ErrorCode::InternalError, "matching decomposition failed its postcondition");
    }
    covered |= part;
  }
  if (covered != index_set) throw Error(ErrorCode::InternalError, "matchings do not cover the index set");
  return out;
}

}  // namespace circast
