#pragma once

// Index-set calculus for 3-circulants: the correspondence between nontrivial
// shift-closed relations and nonempty subsets I of X, the Sym(3) action on
// index sets, and the regularity conditions that make a partition of X the
// index form of a circulant AST.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circast/core.hpp"

namespace circast {

/// The six permutations of the three coordinates.
enum class Sym3 : std::uint8_t { e, t12, t13, t23, c123, c132 };

inline constexpr std::array<Sym3, 6> kSym3All = {Sym3::e,   Sym3::t12,  Sym3::t13,
                                                 Sym3::t23, Sym3::c123, Sym3::c132};

inline constexpr std::size_t index_of(Sym3 g) { return static_cast<std::size_t>(g); }

std::string_view name(Sym3 g);
std::optional<Sym3> parse_sym3(std::string_view text);

/// Zero-based images k -> k^g of the coordinate positions.
std::array<int, 3> images(Sym3 g);

/// Product in the right-action convention: apply `first`, then `second`.
Sym3 compose(Sym3 first, Sym3 second);
Sym3 inverse(Sym3 g);

/// Moves the entry in position k to position k^g, so (123) sends
/// (x1,x2,x3) to (x3,x1,x2).
Triple permute_coordinates(const Triple& t, Sym3 g);
TernaryRelation permute_coordinates(const TernaryRelation& r, Sym3 g);

/// The map induced on X: (12) -> (-i, j-i), (23) -> (j,i), (13) -> (i-j, -j),
/// (123) -> (-j, i-j), (132) -> (j-i, -i).
Pair sym3_image(Pair p, Sym3 g, int n);
PairSet sym3_image(const PairSet& set, Sym3 g);

/// R_I = {(x, x+i, x+j) : x in Omega, (i,j) in I}. Throws EmptyIndexSet.
TernaryRelation expand(const PairSet& index_set);

/// Inverse of expand. Throws NotNontrivial when a triple repeats a
/// coordinate, NotCirculant (naming a triple whose shift is missing) when the
/// relation is not shift-closed, EmptyIndexSet for the empty relation.
PairSet extract(const TernaryRelation& relation);

/// True iff (x,y,z) in R implies (x+1,y+1,z+1) in R.
bool is_circulant(const TernaryRelation& relation);
/// First triple in canonical order whose shift is absent.
std::optional<Triple> circulance_witness(const TernaryRelation& relation);

struct RegularityStats {
  int n_I = 0;
  /// Indexed by x-1 for x in 1..n-1.
  std::vector<int> row_counts;
  std::vector<int> col_counts;
};

struct RegularityWitness {
  enum class Axis { Row, Column };
  Axis axis = Axis::Row;
  int value = 0;
  int count = 0;
};

struct RegularityReport {
  bool ok = false;
  std::optional<RegularityStats> stats;
  std::optional<RegularityWitness> witness;
};

/// Row/column regularity of an index set. The witness is the first row (then
/// column) with count zero, otherwise the first whose count differs from
/// row 1.
RegularityReport regularity_stats(const PairSet& index_set);

struct ConstantWitness {
  Pair pair;
  int count = 0;
};

struct StructureConstant {
  std::optional<int> value;
  /// Set when the count is not constant over L: the least pair of L and the
  /// least pair whose count differs from it.
  std::optional<std::array<ConstantWitness, 2>> conflict;

  bool constant() const { return value.has_value(); }
};

/// For each (y,z) in L counts w outside {0,y,z} with (y-w, z-w) in I,
/// (w,z) in J and (y,w) in K. Throws EmptyIndexSet when L is empty.
StructureConstant circulant_structure_constant(const PairSet& I, const PairSet& J, const PairSet& K,
                                               const PairSet& L);

/// Dense table of p^L_{IJK} over part indices.
class ConstantTable {
 public:
  ConstantTable() = default;
  explicit ConstantTable(std::size_t parts) : parts_(parts), values_(parts * parts * parts * parts, 0) {}

  std::size_t parts() const { return parts_; }
  int at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const { return values_[index(i, j, k, l)]; }
  int& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) { return values_[index(i, j, k, l)]; }

  bool operator==(const ConstantTable&) const = default;

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return ((i * parts_ + j) * parts_ + k) * parts_ + l;
  }
  std::size_t parts_ = 0;
  std::vector<int> values_;
};

struct RegularityFailure {
  char condition = 'a';  // 'a', 'b' or 'c'
  /// (a): the part; (b): the part whose image is not a part; (c): I, J, K, L.
  std::vector<int> parts;
  std::optional<RegularityWitness> row_witness;
  std::optional<Sym3> element;
  std::vector<ConstantWitness> pairs;
  std::string message;
};

struct ASTRegularityReport {
  bool ok = false;
  /// One entry per part examined under condition (a).
  std::vector<RegularityReport> part_stats;
  /// action[g][k] = index of the image of part k under g.
  std::optional<std::array<std::vector<int>, 6>> action;
  std::optional<ConstantTable> constants;
  std::optional<RegularityFailure> failure;
};

/// Checks conditions (a), (b), (c) in that order, stopping at the first that
/// fails. The quadruple scan of (c) is split over `jobs` threads; the report
/// does not depend on the thread count.
ASTRegularityReport is_ast_regular(const IndexPartition& partition, int jobs = 1);

/// The circulant AST {R0,R1,R2,R3} followed by R_I for each part in order.
/// Throws NotASTRegular.
TriplePartition build_ast(const IndexPartition& partition);

/// Recovers the index partition from a circulant AST. Throws NotCirculantAST.
IndexPartition extract_partition(const TriplePartition& ast);

}  // namespace circast
