#pragma once

// Verifier for the AST axioms on arbitrary partitions of the cube, whether or
// not they are circulant.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "circast/circulant.hpp"
#include "circast/core.hpp"

namespace circast {

/// Sparse p_{ijk}^l together with the directly counted marginals.
struct StructureTensor {
  int n = 0;
  int m = 0;
  /// Only nonzero entries are stored; key is {i, j, k, l}.
  std::map<std::array<int, 4>, int> p;
  /// n_i^(1), n_i^(2), n_i^(3) for each nontrivial id i (index i-4).
  std::vector<int> n1, n2, n3;

  int at(int i, int j, int k, int l) const {
    auto it = p.find({i, j, k, l});
    return it == p.end() ? 0 : it->second;
  }
};

struct AxiomFailure {
  std::string axiom;  // "trivial", "A1", "A2", "A3", "Eq1"
  std::vector<int> relations;
  std::vector<Triple> triples;
  std::vector<int> counts;
  std::string message;
  /// Ordered point pairs (x, y) used by A1 witnesses.
  std::vector<std::array<int, 2>> pairs;
};

struct ASTReport {
  bool ok = false;
  std::optional<StructureTensor> tensor;
  /// a3_action[g][id] = id of the image of relation id under g.
  std::optional<std::array<std::vector<int>, 6>> a3_action;
  bool symmetric = false;
  std::vector<AxiomFailure> failures;
};

template <typename T>
struct Checked {
  std::optional<T> value;
  std::optional<AxiomFailure> failure;
  bool ok() const { return value.has_value(); }
};

/// True iff ids 0..3 are exactly R0..R3.
bool verify_trivial(const TriplePartition& ast);

/// n_i^(3) for each nontrivial id (index i-4); counts must be positive and
/// constant over all x != y.
Checked<std::vector<int>> verify_a1(const TriplePartition& ast);

using Sym3Action = std::array<std::vector<int>, 6>;
Checked<Sym3Action> verify_a3(const TriplePartition& ast);

/// Bins every w for every triple by the ids of ((w,y,z), (x,w,z), (x,y,w)) and
/// requires the bin vector to be constant on each relation. Parallel over
/// relations when jobs > 1; output is independent of jobs.
Checked<StructureTensor> verify_a2(const TriplePartition& ast, int jobs = 1);

/// Runs trivial, A1, A3, A2 in that order, then the marginal identities.
ASTReport verify_ast(const TriplePartition& ast, int jobs = 1);

struct DerivedParameters {
  std::vector<int> n1;
  std::vector<int> n2;
};

/// n_i^(1) = sum_k p_{i2k}^2 and n_i^(2) = sum_k p_{1ik}^1, cross-checked
/// against the counted marginals in the tensor. Throws IdentityViolation.
DerivedParameters derived_parameters(const StructureTensor& tensor);

/// Directly counted marginals: for id i, the numbers of z with (z,x,y),
/// (x,z,y) and (x,y,z) in R_i, if constant over x != y.
struct Marginals {
  std::vector<std::optional<int>> n1, n2, n3;
};
Marginals count_marginals(const TriplePartition& ast);

/// Every nontrivial relation is fixed by all six coordinate permutations.
bool is_symmetric_ast(const TriplePartition& ast);
bool is_symmetric_action(const Sym3Action& action);

/// Union of the six Sym(3) images of I. Throws EmptyIndexSet.
PairSet symmetrise(const PairSet& index_set);

}  // namespace circast
