#include "circast/core.hpp"

#include <algorithm>
#include <sstream>

namespace circast {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::EmptyIndexSet: return "EmptyIndexSet";
    case ErrorCode::NotCirculant: return "NotCirculant";
    case ErrorCode::NotNontrivial: return "NotNontrivial";
    case ErrorCode::NotASTRegular: return "NotASTRegular";
    case ErrorCode::NotCirculantAST: return "NotCirculantAST";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::NotThin: return "NotThin";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::MalformedCycles: return "MalformedCycles";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

Domain make_domain(int n) {
  if (n < 3) {
    throw Error(ErrorCode::DomainTooSmall, "n = " + std::to_string(n) + " but at least 3 points are needed");
  }
  if (n > (1 << 16)) {
    throw Error(ErrorCode::InvalidPartition, "n = " + std::to_string(n) + " exceeds 65536");
  }
  return Domain{n};
}

std::string to_string(Pair p) {
  return "(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
}

std::string to_string(const Triple& t) {
  return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

// ---------------------------------------------------------------- PairSet

PairSet::PairSet(int n) : n_(n), words_((universe_size(n) + 63) / 64, 0) {}

PairSet::PairSet(int n, const std::vector<Pair>& pairs) : PairSet(n) {
  for (const Pair& p : pairs) insert(p);
}

std::size_t PairSet::rank(Pair p) const {
  const auto row = static_cast<std::size_t>(p.i - 1) * static_cast<std::size_t>(n_ - 2);
  const int col = p.j > p.i ? p.j - 2 : p.j - 1;
  return row + static_cast<std::size_t>(col);
}

Pair PairSet::unrank(std::size_t r) const {
  const auto width = static_cast<std::size_t>(n_ - 2);
  const int i = static_cast<int>(r / width) + 1;
  const int c = static_cast<int>(r % width) + 1;
  return Pair{i, c < i ? c : c + 1};
}

void PairSet::insert(Pair p) {
  if (!in_universe(n_, p)) {
    throw Error(ErrorCode::InvalidPartition, "pair " + to_string(p) + " is not in X for n = " + std::to_string(n_));
  }
  set_rank(rank(p));
}

void PairSet::erase(Pair p) {
  if (!in_universe(n_, p)) return;
  const std::size_t r = rank(p);
  words_[r >> 6] &= ~(std::uint64_t{1} << (r & 63));
}

bool PairSet::contains(Pair p) const {
  return in_universe(n_, p) && test_rank(rank(p));
}

std::size_t PairSet::size() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(__builtin_popcountll(w));
  return total;
}

bool PairSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::optional<std::size_t> PairSet::least_rank() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w]) return w * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[w]));
  }
  return std::nullopt;
}

std::optional<Pair> PairSet::least() const {
  if (auto r = least_rank()) return unrank(*r);
  return std::nullopt;
}

bool PairSet::intersects(const PairSet& other) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & other.words_[w]) return true;
  }
  return false;
}

bool PairSet::is_subset_of(const PairSet& other) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & ~other.words_[w]) return false;
  }
  return true;
}

PairSet& PairSet::operator|=(const PairSet& other) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

PairSet& PairSet::operator-=(const PairSet& other) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  return *this;
}

std::vector<Pair> PairSet::pairs() const {
  std::vector<Pair> out;
  out.reserve(size());
  for_each([&](Pair p) { out.push_back(p); });
  return out;
}

std::strong_ordering operator<=>(const PairSet& a, const PairSet& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  // At the first rank where membership differs, the set holding it is smaller
  // unless the other set has nothing beyond that rank (it is then a prefix).
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    const std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (!diff) continue;
    const std::uint64_t low = diff & (~diff + 1);
    const bool in_a = (a.words_[w] & low) != 0;
    auto has_later = [&](const PairSet& s) {
      const std::uint64_t above = s.words_[w] & ~((low << 1) - 1);
      if (above) return true;
      for (std::size_t v = w + 1; v < s.words_.size(); ++v) {
        if (s.words_[v]) return true;
      }
      return false;
    };
    if (in_a) return has_later(b) ? std::strong_ordering::less : std::strong_ordering::greater;
    return has_later(a) ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

PairSet build_pair_universe(const Domain& d) {
  PairSet x(d.n);
  for (std::size_t r = 0; r < x.universe_size(); ++r) x.set_rank(r);
  return x;
}

// -------------------------------------------------------- TernaryRelation

TernaryRelation::TernaryRelation(int n, std::vector<Triple> triples) : n_(n), triples_(std::move(triples)) {
  for (const Triple& t : triples_) {
    for (int c : t) {
      if (c < 0 || c >= n_) {
        throw Error(ErrorCode::InvalidPartition, "triple " + to_string(t) + " out of range for n = " + std::to_string(n_));
      }
    }
  }
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
}

bool TernaryRelation::contains(const Triple& t) const {
  return std::binary_search(triples_.begin(), triples_.end(), t);
}

std::array<TernaryRelation, 4> trivial_relations(const Domain& d) {
  const int n = d.n;
  std::vector<Triple> r0, r1, r2, r3;
  for (int x = 0; x < n; ++x) {
    r0.push_back({x, x, x});
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      r1.push_back({x, y, y});
      r2.push_back({x, y, x});
      r3.push_back({x, x, y});
    }
  }
  return {TernaryRelation(n, std::move(r0)), TernaryRelation(n, std::move(r1)),
          TernaryRelation(n, std::move(r2)), TernaryRelation(n, std::move(r3))};
}

// -------------------------------------------------------- TriplePartition

TriplePartition::TriplePartition(int n, std::vector<TernaryRelation> relations)
    : n_(n), relations_(std::move(relations)) {
  make_domain(n);
  std::vector<int> owner(cube_index(n, n - 1, n - 1, n - 1) + 1, -1);
  for (std::size_t id = 0; id < relations_.size(); ++id) {
    const TernaryRelation& r = relations_[id];
    if (r.n() != n) throw Error(ErrorCode::InvalidPartition, "relation " + std::to_string(id) + " has a different n");
    if (r.empty()) throw Error(ErrorCode::InvalidPartition, "relation " + std::to_string(id) + " is empty");
    for (const Triple& t : r.triples()) {
      int& slot = owner[cube_index(n, t[0], t[1], t[2])];
      if (slot != -1) {
        throw Error(ErrorCode::InvalidPartition, "triple " + to_string(t) + " lies in relations " +
                                                     std::to_string(slot) + " and " + std::to_string(id));
      }
      slot = static_cast<int>(id);
    }
  }
  for (std::size_t k = 0; k < owner.size(); ++k) {
    if (owner[k] == -1) {
      const int z = static_cast<int>(k % static_cast<std::size_t>(n));
      const int y = static_cast<int>((k / static_cast<std::size_t>(n)) % static_cast<std::size_t>(n));
      const int x = static_cast<int>(k / (static_cast<std::size_t>(n) * static_cast<std::size_t>(n)));
      throw Error(ErrorCode::InvalidPartition, "triple " + to_string(Triple{x, y, z}) + " is not covered");
    }
  }
}

std::vector<int> TriplePartition::label_cube() const {
  std::vector<int> labels(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), -1);
  for (std::size_t id = 0; id < relations_.size(); ++id) {
    for (const Triple& t : relations_[id].triples()) labels[cube_index(n_, t[0], t[1], t[2])] = static_cast<int>(id);
  }
  return labels;
}

// --------------------------------------------------------- IndexPartition

IndexPartition::IndexPartition(int n, std::vector<PairSet> parts) : n_(n), parts_(std::move(parts)) {
  make_domain(n);
  const std::size_t universe = PairSet::universe_size(n);
  part_of_rank_.assign(universe, -1);
  for (const PairSet& p : parts_) {
    if (p.n() != n) throw Error(ErrorCode::InvalidPartition, "part built for a different n");
    if (p.empty()) throw Error(ErrorCode::InvalidPartition, "empty part");
  }
  std::sort(parts_.begin(), parts_.end(),
            [](const PairSet& a, const PairSet& b) { return *a.least_rank() < *b.least_rank(); });
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    for (std::size_t r = 0; r < universe; ++r) {
      if (!parts_[k].test_rank(r)) continue;
      if (part_of_rank_[r] != -1) {
        throw Error(ErrorCode::InvalidPartition, "pair " + to_string(parts_[k].unrank(r)) + " lies in two parts");
      }
      part_of_rank_[r] = static_cast<int>(k);
    }
  }
  for (std::size_t r = 0; r < universe; ++r) {
    if (part_of_rank_[r] == -1) {
      throw Error(ErrorCode::InvalidPartition, "pair " + to_string(PairSet(n).unrank(r)) + " is not covered");
    }
  }
}

int IndexPartition::part_of(Pair p) const {
  if (!PairSet::in_universe(n_, p)) return -1;
  return part_of_rank_[parts_.front().rank(p)];
}

std::strong_ordering operator<=>(const IndexPartition& a, const IndexPartition& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  const std::size_t common = std::min(a.parts_.size(), b.parts_.size());
  for (std::size_t k = 0; k < common; ++k) {
    if (auto c = a.parts_[k] <=> b.parts_[k]; c != 0) return c;
  }
  return a.parts_.size() <=> b.parts_.size();
}

}  // namespace circast
