#include <doctest.h>

#include "circast/astcheck.hpp"
#include "circast/circulant.hpp"
#include "circast/groups.hpp"
#include "oracles.hpp"

using namespace circast;

namespace {

GroupSpec symmetric_group(int n) {
  return GroupSpec{n, {parse_cycles("(0 1)", n), parse_cycles(n > 2 ? "(0 1 2)" : "", n),
                       Permutation([n] {
                         std::vector<int> img(static_cast<std::size_t>(n));
                         for (int x = 0; x < n; ++x) img[static_cast<std::size_t>(x)] = (x + 1) % n;
                         return img;
                       }())}};
}

GroupSpec shift_group(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) img[static_cast<std::size_t>(x)] = (x + 1) % n;
  return GroupSpec{n, {Permutation(img)}};
}

}  // namespace

TEST_CASE("cycle parsing") {
  const Permutation c = parse_cycles("(0 1 2)", 3);
  CHECK(c.images() == std::vector<int>{1, 2, 0});
  CHECK(c.cycles() == "(0 1 2)");
  CHECK(parse_cycles("", 4) == Permutation(4));
  CHECK(parse_cycles("(0,3)(1 2)", 4).images() == std::vector<int>{3, 2, 1, 0});
  CHECK_THROWS_AS(parse_cycles("(0 1)(1 2)", 3), Error);
  CHECK_THROWS_AS(parse_cycles("(0 5)", 3), Error);
  CHECK_THROWS_AS(parse_cycles("(0 1", 3), Error);
}

TEST_CASE("orbits of familiar groups") {
  const TriplePartition s5 = orbit_partition_on_triples(symmetric_group(5));
  REQUIRE(s5.m() == 4);
  CHECK(s5.relation(4).size() == 60);

  const TriplePartition c5 = orbit_partition_on_triples(shift_group(5));
  CHECK(c5.m() == 15);
  for (int id = 4; id <= c5.m(); ++id) CHECK(c5.relation(id).size() == 5);
  const ASTReport r = verify_ast(c5);
  CHECK_FALSE(r.ok);
  CHECK(r.failures.front().axiom == "A1");

  const TriplePartition a5 = orbit_partition_on_triples(agl1(5));
  REQUIRE(a5.m() == 6);
  for (int id = 4; id <= 6; ++id) CHECK(a5.relation(id).size() == 20);
  CHECK(verify_ast(a5).ok);
  CHECK(extract_partition(a5) == IndexPartition(5, oracle::multiplicative_parts(5)));
}

TEST_CASE("orbits cover the distinct triples once") {
  for (const GroupSpec& g : {symmetric_group(4), shift_group(6), agl1(7), GroupSpec{5, {parse_cycles("(1 2)", 5)}}}) {
    const TriplePartition p = orbit_partition_on_triples(g);
    const auto label = oracle::labels(p);
    CHECK(label.size() == static_cast<std::size_t>(g.n * g.n * g.n));
    std::size_t distinct = 0;
    for (int id = 4; id <= p.m(); ++id) {
      distinct += p.relation(id).size();
      for (const Triple& t : p.relation(id).triples()) {
        CHECK(pairwise_distinct(t));
        for (const Permutation& s : g.generators) CHECK(label.at({s(t[0]), s(t[1]), s(t[2])}) == id);
      }
    }
    CHECK(distinct == static_cast<std::size_t>(g.n * (g.n - 1) * (g.n - 2)));
  }
}

TEST_CASE("affine groups") {
  const GroupSpec g5 = agl1(5);
  REQUIRE(g5.generators.size() == 2);
  CHECK(g5.generators[0].cycles() == "(0 1 2 3 4)");
  CHECK(g5.generators[1].cycles() == "(1 2 4 3)");
  const GroupSpec g7 = agl1(7);
  for (int x = 0; x < 7; ++x) CHECK(g7.generators[1](x) == (3 * x) % 7);
  CHECK_THROWS_AS(agl1(4), Error);
  CHECK(least_primitive_root(5) == 2);
  CHECK(least_primitive_root(7) == 3);
  CHECK(least_primitive_root(11) == 2);
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9));
}

TEST_CASE("two-transitivity and shift invariance") {
  CHECK(is_two_transitive(agl1(5)));
  CHECK_FALSE(is_two_transitive(shift_group(5)));
  CHECK(is_two_transitive(symmetric_group(4)));
  CHECK(shift_invariance_check(orbit_partition_on_triples(agl1(5))));
  CHECK(shift_invariance_check(orbit_partition_on_triples(symmetric_group(4))));
  CHECK_FALSE(shift_invariance_check(orbit_partition_on_triples(GroupSpec{4, {parse_cycles("(0 1)", 4), parse_cycles("(1 2)", 4)}})));
}
