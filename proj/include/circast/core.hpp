#pragma once

// Domain types shared by every module: the base set, the pair universe X of
// ordered pairs of distinct nonzero residues, triples, ternary relations and
// the two partition forms (of the cube, and of X).

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circast/error.hpp"

namespace circast {

struct Domain {
  int n = 0;
};

/// Throws DomainTooSmall for n < 3.
Domain make_domain(int n);

/// Reduces any integer to its representative in 0..n-1.
inline int mod(long long v, int n) {
  long long r = v % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

struct Pair {
  int i = 0;
  int j = 0;
  auto operator<=>(const Pair&) const = default;
};

using Triple = std::array<int, 3>;

inline bool pairwise_distinct(const Triple& t) {
  return t[0] != t[1] && t[0] != t[2] && t[1] != t[2];
}

/// A subset of X stored as a bitset indexed by the rank of each pair in
/// lexicographic order. Iteration is always canonical.
class PairSet {
 public:
  PairSet() = default;
  explicit PairSet(int n);
  PairSet(int n, const std::vector<Pair>& pairs);

  int n() const { return n_; }

  /// |X| = (n-1)(n-2).
  static std::size_t universe_size(int n) {
    return static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(n - 2);
  }
  std::size_t universe_size() const { return universe_size(n_); }

  static bool in_universe(int n, Pair p) {
    return p.i > 0 && p.j > 0 && p.i < n && p.j < n && p.i != p.j;
  }

  /// Rank of p in canonical order; p must lie in X.
  std::size_t rank(Pair p) const;
  Pair unrank(std::size_t r) const;

  /// Throws InvalidPartition if p is not in X.
  void insert(Pair p);
  void erase(Pair p);
  bool contains(Pair p) const;
  bool test_rank(std::size_t r) const {
    return (words_[r >> 6] >> (r & 63)) & 1u;
  }
  void set_rank(std::size_t r) { words_[r >> 6] |= std::uint64_t{1} << (r & 63); }

  std::size_t size() const;
  bool empty() const;

  /// Least pair in canonical order; nullopt when empty.
  std::optional<Pair> least() const;
  std::optional<std::size_t> least_rank() const;

  bool intersects(const PairSet& other) const;
  bool is_subset_of(const PairSet& other) const;
  PairSet& operator|=(const PairSet& other);
  PairSet& operator-=(const PairSet& other);

  std::vector<Pair> pairs() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        fn(unrank(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator==(const PairSet& other) const = default;

  /// Lexicographic order on the sorted member lists.
  friend std::strong_ordering operator<=>(const PairSet& a, const PairSet& b);

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// X itself, in canonical order.
PairSet build_pair_universe(const Domain& d);

/// A set of triples over {0..n-1}, kept sorted and duplicate-free.
class TernaryRelation {
 public:
  TernaryRelation() = default;
  TernaryRelation(int n, std::vector<Triple> triples);

  int n() const { return n_; }
  const std::vector<Triple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  bool contains(const Triple& t) const;

  bool operator==(const TernaryRelation&) const = default;

 private:
  int n_ = 0;
  std::vector<Triple> triples_;
};

/// R0 (diagonal), R1 = {(x,y,y)}, R2 = {(x,y,x)}, R3 = {(x,x,y)}, x != y.
std::array<TernaryRelation, 4> trivial_relations(const Domain& d);

/// A labelled partition of the cube into nonempty relations with ids 0..m.
class TriplePartition {
 public:
  TriplePartition() = default;
  /// Throws InvalidPartition unless the relations are nonempty, pairwise
  /// disjoint and cover all n^3 triples.
  TriplePartition(int n, std::vector<TernaryRelation> relations);

  int n() const { return n_; }
  /// Highest relation id, i.e. the m of an AST.
  int m() const { return static_cast<int>(relations_.size()) - 1; }
  const std::vector<TernaryRelation>& relations() const { return relations_; }
  const TernaryRelation& relation(int id) const { return relations_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return relations_.size(); }

  /// Relation id of every triple, indexed by (x*n + y)*n + z.
  std::vector<int> label_cube() const;

  bool operator==(const TriplePartition&) const = default;

 private:
  int n_ = 0;
  std::vector<TernaryRelation> relations_;
};

/// A partition of X into nonempty parts, stored sorted by least pair.
class IndexPartition {
 public:
  IndexPartition() = default;
  /// Throws InvalidPartition unless the parts are nonempty, pairwise disjoint
  /// and their union is X.
  IndexPartition(int n, std::vector<PairSet> parts);

  int n() const { return n_; }
  const std::vector<PairSet>& parts() const { return parts_; }
  const PairSet& part(std::size_t k) const { return parts_.at(k); }
  std::size_t size() const { return parts_.size(); }

  /// Index of the part containing the pair with the given rank.
  const std::vector<int>& part_of_rank() const { return part_of_rank_; }
  int part_of(Pair p) const;

  bool operator==(const IndexPartition& other) const { return n_ == other.n_ && parts_ == other.parts_; }
  friend std::strong_ordering operator<=>(const IndexPartition& a, const IndexPartition& b);

 private:
  int n_ = 0;
  std::vector<PairSet> parts_;
  std::vector<int> part_of_rank_;
};

inline std::size_t cube_index(int n, int x, int y, int z) {
  return (static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + static_cast<std::size_t>(y)) *
             static_cast<std::size_t>(n) +
         static_cast<std::size_t>(z);
}

std::string to_string(Pair p);
std::string to_string(const Triple& t);

}  // namespace circast
