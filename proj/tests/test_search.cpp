#include <doctest.h>

#include <algorithm>

#include "circast/astcheck.hpp"
#include "circast/circulant.hpp"
#include "circast/search.hpp"
#include "circast/thin.hpp"
#include "oracles.hpp"

using namespace circast;

namespace {

bool block_regular(const std::vector<Pair>& block, int n) {
  std::vector<int> rows(static_cast<std::size_t>(n), 0);
  std::vector<int> cols(static_cast<std::size_t>(n), 0);
  for (const Pair& p : block) {
    ++rows[static_cast<std::size_t>(p.i)];
    ++cols[static_cast<std::size_t>(p.j)];
  }
  for (int x = 1; x < n; ++x) {
    if (rows[static_cast<std::size_t>(x)] != rows[1] || cols[static_cast<std::size_t>(x)] != rows[1]) return false;
  }
  return rows[1] > 0;
}

std::vector<IndexPartition> naive_ast_regular(int n) {
  std::vector<IndexPartition> out;
  oracle::for_each_set_partition(n, [&](const std::vector<std::vector<Pair>>& blocks) {
    for (const auto& b : blocks) {
      if (!block_regular(b, n)) return;
    }
    std::vector<PairSet> parts;
    for (const auto& b : blocks) parts.emplace_back(n, b);
    IndexPartition p(n, parts);
    if (is_ast_regular(p).ok) out.push_back(std::move(p));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IndexPartition> searched(int n) {
  SearchConfig config;
  config.n = n;
  std::vector<IndexPartition> out;
  const SearchResult r = search_ast_regular(config);
  CHECK(r.complete);
  for (const auto& e : r.partitions) out.push_back(e.partition);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("candidate parts") {
  const auto n4 = enumerate_candidate_parts(4, {1, 2}, 1);
  REQUIRE(n4.size() == 1);
  CHECK(n4[0] == PairSet(4, {{1, 2}, {2, 3}, {3, 1}}));
  const auto n3 = enumerate_candidate_parts(3, {1, 2}, 1);
  REQUIRE(n3.size() == 1);
  CHECK(n3[0] == PairSet(3, {{1, 2}, {2, 1}}));
  for (int n = 3; n <= 8; ++n) {
    const auto all = enumerate_candidate_parts(n, {1, 2}, n - 2);
    CHECK(std::find(all.begin(), all.end(), build_pair_universe(make_domain(n))) != all.end());
    for (const PairSet& s : all) {
      CHECK(s.contains({1, 2}));
      CHECK(regularity_stats(s).ok);
    }
  }
}

TEST_CASE("search matches the naive enumerator") {
  CHECK(searched(3) == naive_ast_regular(3));
  CHECK(searched(4) == naive_ast_regular(4));
  CHECK(searched(5) == naive_ast_regular(5));
}

TEST_CASE("search small cases") {
  const auto n3 = searched(3);
  REQUIRE(n3.size() == 1);
  CHECK(n3[0] == IndexPartition(3, {PairSet(3, {{1, 2}, {2, 1}})}));
  const auto n5 = searched(5);
  const IndexPartition coarse(5, {build_pair_universe(make_domain(5))});
  const IndexPartition agl(5, oracle::multiplicative_parts(5));
  CHECK(std::find(n5.begin(), n5.end(), coarse) != n5.end());
  CHECK(std::find(n5.begin(), n5.end(), agl) != n5.end());
}

TEST_CASE("search results are sound") {
  for (int n = 3; n <= 8; ++n) {
    SearchConfig config;
    config.n = n;
    config.jobs = 3;
    for (const auto& e : search_ast_regular(config).partitions) {
      CHECK(is_ast_regular(e.partition).ok);
      CHECK(verify_ast(build_ast(e.partition)).ok);
    }
  }
}

TEST_CASE("search filters") {
  SearchConfig config;
  config.n = 7;
  config.require_all_thin = true;
  const auto thin = search_ast_regular(config);
  REQUIRE_FALSE(thin.partitions.empty());
  for (const auto& e : thin.partitions) {
    for (const auto& s : e.report.part_stats) CHECK(s.stats->n_I == 1);
  }
  config.require_all_thin = false;
  config.require_symmetric = true;
  for (const auto& e : search_ast_regular(config).partitions) CHECK(is_symmetric_ast(build_ast(e.partition)));
  config.require_symmetric = false;
  config.max_nI = 1;
  CHECK(search_ast_regular(config).partitions.size() == thin.partitions.size());
}

TEST_CASE("search limit and budget") {
  SearchConfig config;
  config.n = 7;
  config.limit = 1;
  const auto r = search_ast_regular(config);
  CHECK(r.partitions.size() == 1);
  CHECK_FALSE(r.complete);
  config.dedupe = Dedupe::multiplier;
  const auto d = search_ast_regular(config);
  CHECK(d.partitions.size() == 1);
  CHECK_FALSE(d.complete);
  config.n = 3;
  config.limit = 1;
  CHECK(search_ast_regular(config).complete);
  config.n = 7;
  config.dedupe = Dedupe::none;
  config.limit.reset();
  config.time_budget = std::chrono::milliseconds(0);
  const auto t = search_ast_regular(config);
  for (const auto& e : t.partitions) CHECK(is_ast_regular(e.partition).ok);
}

TEST_CASE("search output does not depend on jobs") {
  for (int n : {5, 7}) {
    SearchConfig a;
    a.n = n;
    SearchConfig b = a;
    b.jobs = 8;
    const auto ra = search_ast_regular(a);
    const auto rb = search_ast_regular(b);
    REQUIRE(ra.partitions.size() == rb.partitions.size());
    for (std::size_t k = 0; k < ra.partitions.size(); ++k) CHECK(ra.partitions[k].partition == rb.partitions[k].partition);
    CHECK(ra.nodes == rb.nodes);
  }
}

TEST_CASE("multipliers") {
  const IndexPartition agl(5, oracle::multiplicative_parts(5));
  CHECK(apply_multiplier(agl, 1) == agl);
  CHECK(apply_multiplier(agl, 2) == agl);
  const IndexPartition coarse(7, {build_pair_universe(make_domain(7))});
  for (int c = 1; c < 7; ++c) CHECK(apply_multiplier(coarse, c) == coarse);

  SearchConfig config;
  config.n = 7;
  const auto all = search_ast_regular(config);
  config.dedupe = Dedupe::multiplier;
  const auto reduced = search_ast_regular(config);
  CHECK(reduced.partitions.size() <= all.partitions.size());
  for (const auto& e : all.partitions) {
    bool represented = false;
    for (int c = 1; c < 7; ++c) {
      const IndexPartition image = apply_multiplier(e.partition, c);
      for (const auto& r : reduced.partitions) represented = represented || r.partition == image;
    }
    CHECK(represented);
  }
  for (const auto& e : reduced.partitions) {
    for (int c = 1; c < 7; ++c) CHECK_FALSE(apply_multiplier(e.partition, c) < e.partition);
  }
}
