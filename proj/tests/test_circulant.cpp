#include <doctest.h>

#include "circast/astcheck.hpp"
#include "circast/circulant.hpp"
#include "oracles.hpp"

using namespace circast;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

const std::map<Sym3, std::array<int, 3>> kPositions = {
    {Sym3::e, {0, 1, 2}},    {Sym3::t12, {1, 0, 2}},  {Sym3::t13, {2, 1, 0}},
    {Sym3::t23, {0, 2, 1}},  {Sym3::c123, {1, 2, 0}}, {Sym3::c132, {2, 0, 1}},
};

IndexPartition agl5() {
  return IndexPartition(5, {PairSet(5, {{1, 2}, {2, 4}, {4, 3}, {3, 1}}), PairSet(5, {{2, 1}, {4, 2}, {3, 4}, {1, 3}}),
                            PairSet(5, {{1, 4}, {2, 3}, {3, 2}, {4, 1}})});
}

}  // namespace

TEST_CASE("sym3 group structure") {
  for (Sym3 g : kSym3All) {
    CHECK(compose(g, inverse(g)) == Sym3::e);
    CHECK(parse_sym3(name(g)) == g);
  }
  CHECK(compose(Sym3::t12, Sym3::t23) != compose(Sym3::t23, Sym3::t12));
}

TEST_CASE("sym3 images of pairs") {
  CHECK(sym3_image(PairSet(5, {{1, 2}}), Sym3::t12).pairs() == std::vector<Pair>{{4, 1}});
  CHECK(sym3_image(PairSet(7, {{3, 5}}), Sym3::t23).pairs() == std::vector<Pair>{{5, 3}});
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + trial % 8;
    const PairSet s = oracle::random_pair_set(rng, n, 0.3);
    CHECK(sym3_image(s, Sym3::e) == s);
    for (Sym3 g : kSym3All) {
      for (Sym3 h : kSym3All) CHECK(sym3_image(sym3_image(s, g), h) == sym3_image(s, compose(g, h)));
    }
  }
}

TEST_CASE("sym3 image matches coordinate permutation") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + trial % 9;
    const PairSet s = oracle::random_pair_set(rng, n, 0.25);
    const TernaryRelation r = expand(s);
    for (const auto& [g, pos] : kPositions) {
      std::vector<Triple> moved;
      for (const Triple& t : r.triples()) moved.push_back(oracle::move_coords(t, pos));
      CHECK(expand(sym3_image(s, g)) == TernaryRelation(n, moved));
      CHECK(permute_coordinates(r, g) == TernaryRelation(n, moved));
    }
  }
}

TEST_CASE("tau T tau equals T tau T") {
  for (int n = 3; n <= 12; ++n) {
    for (const Pair& p : oracle::all_pairs(n)) {
      const Pair lhs = sym3_image(sym3_image(sym3_image(p, Sym3::t12, n), Sym3::t23, n), Sym3::t12, n);
      const Pair rhs = sym3_image(sym3_image(sym3_image(p, Sym3::t23, n), Sym3::t12, n), Sym3::t23, n);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("expand") {
  CHECK(expand(PairSet(4, {{1, 2}})).triples() == std::vector<Triple>{{0, 1, 2}, {1, 2, 3}, {2, 3, 0}, {3, 0, 1}});
  std::vector<Triple> distinct;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z)
        if (pairwise_distinct({x, y, z})) distinct.push_back({x, y, z});
  CHECK(expand(PairSet(3, {{1, 2}, {2, 1}})).triples() == distinct);
  CHECK(code_of([] { expand(PairSet(4)); }) == ErrorCode::EmptyIndexSet);
}

TEST_CASE("extract") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 18;
    const PairSet s = oracle::random_pair_set(rng, n, 0.2);
    CHECK(extract(expand(s)) == s);
    CHECK(s.size() * static_cast<std::size_t>(n) == expand(s).size());
  }
  const auto r = trivial_relations(make_domain(5));
  CHECK(code_of([&] { extract(r[1]); }) == ErrorCode::NotNontrivial);
  const TernaryRelation lone(4, {{0, 1, 2}});
  CHECK(code_of([&] { extract(lone); }) == ErrorCode::NotCirculant);
  CHECK(circulance_witness(lone) == Triple{0, 1, 2});
}

TEST_CASE("is_circulant") {
  for (const auto& r : trivial_relations(make_domain(6))) CHECK(is_circulant(r));
  CHECK_FALSE(is_circulant(TernaryRelation(4, {{0, 1, 2}})));
  std::vector<Triple> all;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z) all.push_back({x, y, z});
  CHECK(is_circulant(TernaryRelation(4, all)));
}

TEST_CASE("regularity stats") {
  const auto x5 = regularity_stats(build_pair_universe(make_domain(5)));
  CHECK(x5.ok);
  CHECK(x5.stats->n_I == 3);
  const auto p3 = regularity_stats(PairSet(3, {{1, 2}, {2, 1}}));
  CHECK(p3.ok);
  CHECK(p3.stats->n_I == 1);
  const auto bad = regularity_stats(PairSet(4, {{1, 2}, {2, 1}}));
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.witness);
  CHECK(bad.witness->axis == RegularityWitness::Axis::Row);
  CHECK(bad.witness->value == 3);
  CHECK(bad.witness->count == 0);
}

TEST_CASE("circulant structure constants") {
  const PairSet x6 = build_pair_universe(make_domain(6));
  CHECK(circulant_structure_constant(x6, x6, x6, x6).value == 3);
  const PairSet p3(3, {{1, 2}, {2, 1}});
  CHECK(circulant_structure_constant(p3, p3, p3, p3).value == 0);

  // Scan singletons at n=5 for a non-constant quadruple and compare both
  // conflicting counts with the literal definition.
  const PairSet x5 = build_pair_universe(make_domain(5));
  bool found = false;
  for (const Pair& a : oracle::all_pairs(5)) {
    const PairSet i(5, {a});
    const auto c = circulant_structure_constant(i, x5, x5, x5);
    if (c.constant()) continue;
    found = true;
    REQUIRE(c.conflict);
    for (const auto& w : *c.conflict) CHECK(w.count == oracle::circulant_count(i, x5, x5, 5, w.pair));
    CHECK((*c.conflict)[0].count != (*c.conflict)[1].count);
  }
  CHECK(found);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + trial % 5;
    const PairSet i = oracle::random_pair_set(rng, n, 0.5);
    const PairSet j = oracle::random_pair_set(rng, n, 0.5);
    const PairSet k = oracle::random_pair_set(rng, n, 0.5);
    const PairSet l = oracle::random_pair_set(rng, n, 0.3);
    std::set<int> seen;
    l.for_each([&](Pair p) { seen.insert(oracle::circulant_count(i, j, k, n, p)); });
    const auto c = circulant_structure_constant(i, j, k, l);
    CHECK(c.constant() == (seen.size() == 1));
    if (c.constant()) CHECK(*c.value == *seen.begin());
  }
}

TEST_CASE("is_ast_regular") {
  for (int n = 3; n <= 9; ++n) {
    const IndexPartition coarse(n, {build_pair_universe(make_domain(n))});
    const auto report = is_ast_regular(coarse);
    CHECK(report.ok);
    CHECK(report.constants->at(0, 0, 0, 0) == n - 3);
  }
  std::vector<PairSet> singles;
  for (const Pair& p : oracle::all_pairs(4)) singles.push_back(PairSet(4, {p}));
  const auto single = is_ast_regular(IndexPartition(4, singles));
  CHECK_FALSE(single.ok);
  CHECK(single.failure->condition == 'a');

  const auto agl = is_ast_regular(agl5());
  CHECK(agl.ok);
  for (const auto& s : agl.part_stats) CHECK(s.stats->n_I == 1);
  CHECK(agl5().parts() == std::vector<PairSet>(oracle::multiplicative_parts(5)));

  // Regular parts that are not closed under the action fail (b).
  const IndexPartition broken(5, {PairSet(5, {{1, 2}, {2, 4}, {4, 3}, {3, 1}}),
                                  PairSet(5, {{2, 1}, {4, 2}, {3, 4}, {1, 3}, {1, 4}, {2, 3}, {3, 2}, {4, 1}})});
  const auto b = is_ast_regular(broken);
  CHECK_FALSE(b.ok);
  CHECK(b.failure->condition == 'b');
}

TEST_CASE("condition (c) agrees with the standalone constant") {
  const IndexPartition p = agl5();
  const auto report = is_ast_regular(p, 3);
  REQUIRE(report.ok);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      for (std::size_t k = 0; k < p.size(); ++k)
        for (std::size_t l = 0; l < p.size(); ++l)
          CHECK(circulant_structure_constant(p.part(i), p.part(j), p.part(k), p.part(l)).value ==
                report.constants->at(i, j, k, l));
}

TEST_CASE("build and extract") {
  const IndexPartition coarse(5, {build_pair_universe(make_domain(5))});
  const TriplePartition a = build_ast(coarse);
  REQUIRE(a.m() == 4);
  CHECK(a.relation(0).size() == 5);
  for (int k = 1; k <= 3; ++k) CHECK(a.relation(k).size() == 20);
  CHECK(a.relation(4).size() == 60);
  CHECK(extract_partition(a) == coarse);
  CHECK(extract_partition(build_ast(agl5())) == agl5());

  const IndexPartition unique(3, {PairSet(3, {{1, 2}, {2, 1}})});
  CHECK(build_ast(unique).m() == 4);

  std::vector<PairSet> singles;
  for (const Pair& p : oracle::all_pairs(4)) singles.push_back(PairSet(4, {p}));
  CHECK(code_of([&] { build_ast(IndexPartition(4, singles)); }) == ErrorCode::NotASTRegular);

  auto rels = a.relations();
  std::vector<Triple> moved = rels[4].triples();
  std::vector<Triple> keep;
  std::vector<Triple> split;
  for (const Triple& t : moved) (t[0] == 0 ? split : keep).push_back(t);
  rels[4] = TernaryRelation(5, keep);
  rels.emplace_back(5, split);
  CHECK(code_of([&] { extract_partition(TriplePartition(5, rels)); }) == ErrorCode::NotCirculantAST);
}
