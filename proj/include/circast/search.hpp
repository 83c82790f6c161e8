#pragma once

// Exhaustive backtracking search for AST-regular partitions of X.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "circast/circulant.hpp"
#include "circast/core.hpp"

namespace circast {

enum class Dedupe { none, multiplier };

struct SearchConfig {
  int n = 3;
  std::optional<int> max_nI;
  /// Every part must have n_I = 1.
  bool require_all_thin = false;
  /// Every part must be fixed by all six Sym(3) maps.
  bool require_symmetric = false;
  Dedupe dedupe = Dedupe::none;
  std::optional<std::size_t> limit;
  std::optional<std::chrono::milliseconds> time_budget;
  int jobs = 1;
};

struct SearchEntry {
  IndexPartition partition;
  ASTRegularityReport report;
};

struct SearchResult {
  std::vector<SearchEntry> partitions;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
  /// True only when the whole tree was explored.
  bool complete = false;
};

/// Calls `emit` for every subset of available that contains `containing` and
/// whose rows and columns all have exactly `valency` members, in canonical
/// order. Returning false from `emit` stops the enumeration.
void enumerate_regular_subsets(const PairSet& available, Pair containing, int valency,
                               const std::function<bool(const PairSet&)>& emit);

/// Every subset of X containing the pair that satisfies condition (a) with
/// n_I <= max_nI, in canonical order.
std::vector<PairSet> enumerate_candidate_parts(int n, Pair containing, int max_nI);

/// Canonical augmentation: extend at the least uncovered pair, close each
/// chosen part under Sym(3), prune on overlap, regularity and final
/// triple-intersection counts, and test condition (c) at the leaves. Results
/// are sorted, re-verified, and identical for every job count.
SearchResult search_ast_regular(const SearchConfig& config);

/// Image of a partition under x -> c x (gcd(c, n) = 1) applied to both
/// coordinates of every pair.
IndexPartition apply_multiplier(const IndexPartition& partition, int c);

/// Collapses partitions equivalent under some multiplier to the least
/// representative, keeping canonical order.
std::vector<SearchEntry> dedupe_multiplier(const std::vector<SearchEntry>& results, int n);

}  // namespace circast
