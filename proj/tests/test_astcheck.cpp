#include <doctest.h>

#include "circast/astcheck.hpp"
#include "circast/circulant.hpp"
#include "circast/groups.hpp"
#include "oracles.hpp"

using namespace circast;

namespace {

TriplePartition coarse_ast(int n) { return build_ast(IndexPartition(n, {build_pair_universe(make_domain(n))})); }

// Distinct triples split by a bucket function, on top of the trivial relations.
// Empty buckets are dropped.
TriplePartition split_distinct(int n, const std::function<int(const Triple&)>& bucket, int buckets) {
  const auto t = trivial_relations(make_domain(n));
  std::vector<std::vector<Triple>> parts(static_cast<std::size_t>(buckets));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (pairwise_distinct({x, y, z})) parts[static_cast<std::size_t>(bucket({x, y, z}))].push_back({x, y, z});
  std::vector<TernaryRelation> rels(t.begin(), t.end());
  for (auto& p : parts) {
    if (!p.empty()) rels.emplace_back(n, std::move(p));
  }
  return TriplePartition(n, rels);
}

}  // namespace

TEST_CASE("verify_trivial") {
  CHECK(verify_trivial(coarse_ast(5)));
  const auto t = trivial_relations(make_domain(4));
  std::vector<Triple> merged = t[1].triples();
  merged.insert(merged.end(), t[2].triples().begin(), t[2].triples().end());
  std::vector<TernaryRelation> rels{t[0], TernaryRelation(4, merged), t[3]};
  rels.push_back(coarse_ast(4).relation(4));
  CHECK_FALSE(verify_trivial(TriplePartition(4, rels)));

  std::vector<Triple> rest;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z)
        if (!(x == y && y == z)) rest.push_back({x, y, z});
  CHECK_FALSE(verify_trivial(TriplePartition(4, {t[0], TernaryRelation(4, rest)})));
}

TEST_CASE("verify_a1") {
  const auto a = verify_a1(coarse_ast(5));
  REQUIRE(a.ok());
  CHECK((*a.value)[0] == 3);

  const TriplePartition orbits =
      split_distinct(5, [](const Triple& t) { return oracle::md(t[1] - t[0], 5) * 5 + oracle::md(t[2] - t[0], 5); }, 25);
  CHECK(orbits.m() == 15);
  const auto fail = verify_a1(orbits);
  CHECK_FALSE(fail.ok());
  CHECK(fail.failure->axiom == "A1");

  const auto agl = verify_a1(orbit_partition_on_triples(agl1(5)));
  REQUIRE(agl.ok());
  for (int v : *agl.value) CHECK(v == 1);
  CHECK(agl.value->size() == 3);
}

TEST_CASE("verify_a3") {
  const auto t = trivial_relations(make_domain(5));
  CHECK(permute_coordinates(t[1], Sym3::t23) == t[1]);
  const auto a = verify_a3(coarse_ast(5));
  REQUIRE(a.ok());
  for (Sym3 g : kSym3All) CHECK((*a.value)[index_of(g)][4] == 4);
  const auto by_x1 = split_distinct(5, [](const Triple& t) { return t[0]; }, 5);
  CHECK_FALSE(verify_a3(by_x1).ok());
}

TEST_CASE("verify_a2 against a literal count") {
  for (const TriplePartition& ast :
       {coarse_ast(5), build_ast(IndexPartition(5, oracle::multiplicative_parts(5))), coarse_ast(3),
        build_ast(IndexPartition(7, oracle::multiplicative_parts(7)))}) {
    const auto tensor = verify_a2(ast, 2);
    REQUIRE(tensor.ok());
    const auto label = oracle::labels(ast);
    const int n = ast.n();
    for (int l = 0; l <= ast.m(); ++l) {
      const Triple t = ast.relation(l).triples().front();
      int total = 0;
      for (int i = 0; i <= ast.m(); ++i)
        for (int j = 0; j <= ast.m(); ++j)
          for (int k = 0; k <= ast.m(); ++k) {
            const int c = oracle::count_at(label, n, t, i, j, k);
            CHECK(tensor.value->at(i, j, k, l) == c);
            total += c;
          }
      CHECK(total == n);
    }
  }
  CHECK(verify_a2(coarse_ast(5)).value->at(4, 4, 4, 4) == 2);
}

TEST_CASE("zero and transpose patterns in the tensor") {
  const IndexPartition p(5, oracle::multiplicative_parts(5));
  const TriplePartition ast = build_ast(p);
  const auto t = verify_a2(ast);
  REQUIRE(t.ok());
  for (int i = 0; i <= ast.m(); ++i)
    for (int j = 0; j <= ast.m(); ++j)
      for (int k = 0; k <= ast.m(); ++k)
        if (i >= 4 || j >= 4 || k >= 4) CHECK(t.value->at(i, j, k, 0) == 0);
  for (std::size_t q = 0; q < p.size(); ++q) {
    const int jd = static_cast<int>(q) + 4;
    const int kd = p.part_of(sym3_image(p.part(q), Sym3::t23).least().value()) + 4;
    CHECK(t.value->at(1, jd, kd, 1) == 1);
  }
}

TEST_CASE("verify_ast") {
  for (int n = 3; n <= 8; ++n) CHECK(verify_ast(coarse_ast(n)).ok);
  std::mt19937_64 rng(23);
  std::vector<TernaryRelation> rels;
  const auto t = trivial_relations(make_domain(4));
  std::vector<std::vector<Triple>> parts(3);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z)
        if (pairwise_distinct({x, y, z})) parts[static_cast<std::size_t>(pick(rng))].push_back({x, y, z});
  rels.assign(t.begin(), t.end());
  for (auto& part : parts) rels.emplace_back(4, part);
  const ASTReport bad = verify_ast(TriplePartition(4, rels));
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.failures.empty());
}

TEST_CASE("derived parameters and marginals") {
  const ASTReport r = verify_ast(coarse_ast(5));
  REQUIRE(r.ok);
  const auto d = derived_parameters(*r.tensor);
  CHECK(d.n1[0] == 3);
  CHECK(d.n2[0] == 3);
  CHECK(r.tensor->n3[0] == 3);
  const ASTReport agl = verify_ast(orbit_partition_on_triples(agl1(5)));
  REQUIRE(agl.ok);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(agl.tensor->n1[k] == 1);
    CHECK(agl.tensor->n2[k] == 1);
    CHECK(agl.tensor->n3[k] == 1);
  }
  StructureTensor broken = *r.tensor;
  broken.n1[0] = 7;
  CHECK_THROWS_AS(derived_parameters(broken), Error);
}

TEST_CASE("symmetric ASTs") {
  CHECK(is_symmetric_ast(coarse_ast(6)));
  CHECK(is_symmetric_ast(coarse_ast(3)));
  CHECK_FALSE(is_symmetric_ast(orbit_partition_on_triples(agl1(5))));
}

TEST_CASE("symmetrise") {
  const PairSet s = symmetrise(PairSet(5, {{1, 2}}));
  CHECK(s == PairSet(5, {{1, 2}, {4, 1}, {2, 1}, {4, 3}, {3, 4}, {1, 4}}));
  CHECK(symmetrise(s) == s);
  const PairSet x = build_pair_universe(make_domain(7));
  CHECK(symmetrise(x) == x);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const PairSet i = oracle::random_pair_set(rng, 5 + trial % 6, 0.15);
    const PairSet c = symmetrise(i);
    CHECK(i.is_subset_of(c));
    for (Sym3 g : kSym3All) CHECK(sym3_image(c, g) == c);
  }
  CHECK_THROWS_AS(symmetrise(PairSet(5)), Error);
}
