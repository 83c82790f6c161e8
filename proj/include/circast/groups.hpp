#pragma once

// Permutation groups given by generators, their orbits on triples of
// pairwise distinct points, and the affine groups AGL(1,p).

#include <string>
#include <string_view>
#include <vector>

#include "circast/core.hpp"

namespace circast {

class Permutation {
 public:
  /// Identity on {0..n-1}.
  explicit Permutation(int n);
  /// Throws MalformedCycles unless images is a bijection of {0..n-1}.
  explicit Permutation(std::vector<int> images);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& images() const { return images_; }

  /// Disjoint-cycle form with fixed points omitted; "" for the identity.
  std::string cycles() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

/// Parses disjoint-cycle notation such as "(0 1 2)(3 4)" on {0..n-1}.
/// Commas between points are accepted. Throws MalformedCycles.
Permutation parse_cycles(std::string_view text, int n);

struct GroupSpec {
  int n = 0;
  std::vector<Permutation> generators;
};

/// Nontrivial relations are the orbits on pairwise-distinct triples, ordered
/// by least triple, after R0..R3 at ids 0..3.
TriplePartition orbit_partition_on_triples(const GroupSpec& group);

/// x -> x+1 and x -> g x mod p, g the least primitive root. Throws NotPrime.
GroupSpec agl1(int p);

bool is_prime(int p);
/// Least primitive root modulo the prime p.
int least_primitive_root(int p);

/// True iff the group has a single orbit on ordered pairs of distinct points.
bool is_two_transitive(const GroupSpec& group);

/// True iff every nontrivial relation (id >= 4) is closed under the shift.
bool shift_invariance_check(const TriplePartition& partition);

}  // namespace circast
