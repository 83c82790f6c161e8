#pragma once

// Thin 3-circulants and the decomposition of a regular index set into
// perfect matchings of its bipartite graph.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "circast/core.hpp"

namespace circast {

/// Coordinate pair ab of a projection (x1,x2,x3) -> (x_a, x_b).
enum class CoordPair { p12, p13, p23 };

inline constexpr std::array<CoordPair, 3> kCoordPairs = {CoordPair::p12, CoordPair::p13, CoordPair::p23};

std::string_view name(CoordPair ab);
std::optional<CoordPair> parse_coord_pair(std::string_view text);

struct ThinProfile {
  bool ab12 = false;
  bool ab13 = false;
  bool ab23 = false;

  bool has(CoordPair ab) const;
  bool thin() const { return ab12 || ab13 || ab23; }
  bool operator==(const ThinProfile&) const = default;
};

struct ThinWitness {
  CoordPair ab = CoordPair::p12;
  /// rho[y-1] is the image of y for y in 1..n-1.
  std::vector<int> rho;
  /// rho(y) avoids 0 and y for every y, i.e. the relation is nontrivial.
  bool derangement = false;
};

/// For each ab: is the projection onto coordinates (a, b) one-to-one with
/// image exactly the off-diagonal pairs?
ThinProfile thin_profile(const TernaryRelation& relation);

/// The map rho putting an ab-thin 3-circulant in the form
/// x_a = x, x_b = x + y, x_c = x + rho(y). Throws NotThin if the relation is
/// not an ab-thin 3-circulant.
ThinWitness thin_witness(const TernaryRelation& relation, CoordPair ab);

/// Inverse of thin_witness: the n(n-1) triples described by (ab, rho).
TernaryRelation reconstruct_thin(int n, const ThinWitness& witness);

struct MatchingDecomposition {
  std::vector<PairSet> parts;
};

/// Splits a regular index set (common row/column count n_I) into n_I
/// disjoint perfect matchings by repeated augmenting-path search in canonical
/// vertex order. Throws NotRegular.
MatchingDecomposition matching_decomposition(const PairSet& index_set);

}  // namespace circast
