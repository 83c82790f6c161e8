#include "circast/circulant.hpp"

#include <algorithm>
#include <thread>

namespace circast {

namespace {

constexpr std::array<std::array<int, 3>, 6> kImages = {{
    {0, 1, 2},  // e
    {1, 0, 2},  // (12)
    {2, 1, 0},  // (13)
    {0, 2, 1},  // (23)
    {1, 2, 0},  // (123)
    {2, 0, 1},  // (132)
}};

Sym3 from_images(const std::array<int, 3>& img) {
  for (Sym3 g : kSym3All) {
    if (kImages[index_of(g)] == img) return g;
  }
  throw Error(ErrorCode::InternalError, "not a permutation of three points");
}

}  // namespace

std::string_view name(Sym3 g) {
  switch (g) {
    case Sym3::e: return "e";
    case Sym3::t12: return "(12)";
    case Sym3::t13: return "(13)";
    case Sym3::t23: return "(23)";
    case Sym3::c123: return "(123)";
    case Sym3::c132: return "(132)";
  }
  return "?";
}

std::optional<Sym3> parse_sym3(std::string_view text) {
  for (Sym3 g : kSym3All) {
    if (name(g) == text) return g;
  }
  return std::nullopt;
}

std::array<int, 3> images(Sym3 g) { return kImages[index_of(g)]; }

Sym3 compose(Sym3 first, Sym3 second) {
  const auto& a = kImages[index_of(first)];
  const auto& b = kImages[index_of(second)];
  return from_images({b[a[0]], b[a[1]], b[a[2]]});
}

Sym3 inverse(Sym3 g) {
  const auto& a = kImages[index_of(g)];
  std::array<int, 3> inv{};
  for (int k = 0; k < 3; ++k) inv[a[k]] = k;
  return from_images(inv);
}

Triple permute_coordinates(const Triple& t, Sym3 g) {
  const auto& img = kImages[index_of(g)];
  Triple out{};
  for (int k = 0; k < 3; ++k) out[img[k]] = t[k];
  return out;
}

TernaryRelation permute_coordinates(const TernaryRelation& r, Sym3 g) {
  std::vector<Triple> out;
  out.reserve(r.size());
  for (const Triple& t : r.triples()) out.push_back(permute_coordinates(t, g));
  return TernaryRelation(r.n(), std::move(out));
}

Pair sym3_image(Pair p, Sym3 g, int n) {
  const int i = p.i;
  const int j = p.j;
  switch (g) {
    case Sym3::e: return p;
    case Sym3::t12: return {mod(-i, n), mod(j - i, n)};
    case Sym3::t23: return {j, i};
    case Sym3::t13: return {mod(i - j, n), mod(-j, n)};
    case Sym3::c123: return {mod(-j, n), mod(i - j, n)};
    case Sym3::c132: return {mod(j - i, n), mod(-i, n)};
  }
  return p;
}

PairSet sym3_image(const PairSet& set, Sym3 g) {
  PairSet out(set.n());
  set.for_each([&](Pair p) { out.insert(sym3_image(p, g, set.n())); });
  return out;
}

TernaryRelation expand(const PairSet& index_set) {
  if (index_set.empty()) throw Error(ErrorCode::EmptyIndexSet, "cannot expand an empty index set");
  const int n = index_set.n();
  std::vector<Triple> triples;
  triples.reserve(index_set.size() * static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    index_set.for_each([&](Pair p) { triples.push_back({x, mod(p.i + x, n), mod(p.j + x, n)}); });
  }
  return TernaryRelation(n, std::move(triples));
}

std::optional<Triple> circulance_witness(const TernaryRelation& relation) {
  const int n = relation.n();
  for (const Triple& t : relation.triples()) {
    if (!relation.contains({mod(t[0] + 1, n), mod(t[1] + 1, n), mod(t[2] + 1, n)})) return t;
  }
  return std::nullopt;
}

bool is_circulant(const TernaryRelation& relation) { return !circulance_witness(relation).has_value(); }

PairSet extract(const TernaryRelation& relation) {
  if (relation.empty()) throw Error(ErrorCode::EmptyIndexSet, "cannot extract from an empty relation");
  for (const Triple& t : relation.triples()) {
    if (!pairwise_distinct(t)) {
      throw Error(ErrorCode::NotNontrivial, "triple " + to_string(t) + " repeats a coordinate");
    }
  }
  if (auto w = circulance_witness(relation)) {
    throw Error(ErrorCode::NotCirculant, "shift of " + to_string(*w) + " is missing");
  }
  const int n = relation.n();
  PairSet out(n);
  for (const Triple& t : relation.triples()) {
    if (t[0] == 0) out.insert({t[1], t[2]});
  }
  return out;
}

RegularityReport regularity_stats(const PairSet& index_set) {
  const int n = index_set.n();
  RegularityStats stats;
  stats.row_counts.assign(static_cast<std::size_t>(n - 1), 0);
  stats.col_counts.assign(static_cast<std::size_t>(n - 1), 0);
  index_set.for_each([&](Pair p) {
    ++stats.row_counts[static_cast<std::size_t>(p.i - 1)];
    ++stats.col_counts[static_cast<std::size_t>(p.j - 1)];
  });

  using Axis = RegularityWitness::Axis;
  RegularityReport report;
  auto fail = [&](Axis axis, std::size_t idx, int count) {
    report.witness = RegularityWitness{axis, static_cast<int>(idx) + 1, count};
    return report;
  };
  for (std::size_t x = 0; x < stats.row_counts.size(); ++x) {
    if (stats.row_counts[x] == 0) return fail(Axis::Row, x, 0);
  }
  for (std::size_t x = 0; x < stats.col_counts.size(); ++x) {
    if (stats.col_counts[x] == 0) return fail(Axis::Column, x, 0);
  }
  const int common = stats.row_counts.front();
  for (std::size_t x = 0; x < stats.row_counts.size(); ++x) {
    if (stats.row_counts[x] != common) return fail(Axis::Row, x, stats.row_counts[x]);
  }
  for (std::size_t x = 0; x < stats.col_counts.size(); ++x) {
    if (stats.col_counts[x] != common) return fail(Axis::Column, x, stats.col_counts[x]);
  }
  stats.n_I = common;
  report.ok = true;
  report.stats = std::move(stats);
  return report;
}

StructureConstant circulant_structure_constant(const PairSet& I, const PairSet& J, const PairSet& K,
                                               const PairSet& L) {
  if (L.empty()) throw Error(ErrorCode::EmptyIndexSet, "L must be nonempty");
  const int n = L.n();
  std::optional<ConstantWitness> first;
  StructureConstant result;
  bool conflict = false;
  L.for_each([&](Pair yz) {
    if (conflict) return;
    const int y = yz.i;
    const int z = yz.j;
    int count = 0;
    for (int w = 1; w < n; ++w) {
      if (w == y || w == z) continue;
      if (I.contains({mod(y - w, n), mod(z - w, n)}) && J.contains({w, z}) && K.contains({y, w})) ++count;
    }
    if (!first) {
      first = ConstantWitness{yz, count};
    } else if (count != first->count) {
      result.conflict = std::array<ConstantWitness, 2>{*first, ConstantWitness{yz, count}};
      conflict = true;
    }
  });
  if (!conflict) result.value = first->count;
  return result;
}

namespace {

std::string describe(const RegularityWitness& w) {
  return std::string(w.axis == RegularityWitness::Axis::Row ? "row " : "column ") + std::to_string(w.value) +
         " has count " + std::to_string(w.count);
}

// counts[pair rank][(I*k + J)*k + K] for every pair of X.
std::vector<std::vector<int>> bin_triple_intersections(const IndexPartition& partition, int jobs) {
  const int n = partition.n();
  const std::size_t k = partition.size();
  const std::size_t universe = PairSet::universe_size(n);
  const auto& owner = partition.part_of_rank();
  const PairSet& probe = partition.part(0);
  std::vector<std::vector<int>> counts(universe);

  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t r = begin; r < universe; r += stride) {
      std::vector<int> bins(k * k * k, 0);
      const Pair yz = probe.unrank(r);
      for (int w = 1; w < n; ++w) {
        if (w == yz.i || w == yz.j) continue;
        const auto i = static_cast<std::size_t>(owner[probe.rank({mod(yz.i - w, n), mod(yz.j - w, n)})]);
        const auto j = static_cast<std::size_t>(owner[probe.rank({w, yz.j})]);
        const auto kk = static_cast<std::size_t>(owner[probe.rank({yz.i, w})]);
        ++bins[(i * k + j) * k + kk];
      }
      counts[r] = std::move(bins);
    }
  };

  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || universe < 64) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
  }
  return counts;
}

}  // namespace

ASTRegularityReport is_ast_regular(const IndexPartition& partition, int jobs) {
  ASTRegularityReport report;
  const std::size_t k = partition.size();

  // (a)
  for (std::size_t p = 0; p < k; ++p) {
    report.part_stats.push_back(regularity_stats(partition.part(p)));
    const RegularityReport& rs = report.part_stats.back();
    if (!rs.ok) {
      RegularityFailure f;
      f.condition = 'a';
      f.parts = {static_cast<int>(p)};
      f.row_witness = rs.witness;
      f.message = "part " + std::to_string(p) + ": " + describe(*rs.witness);
      report.failure = std::move(f);
      return report;
    }
  }

  // (b)
  std::array<std::vector<int>, 6> action;
  for (Sym3 g : kSym3All) {
    auto& row = action[index_of(g)];
    row.resize(k);
    for (std::size_t p = 0; p < k; ++p) {
      const PairSet image = sym3_image(partition.part(p), g);
      const int target = partition.part_of(*image.least());
      if (image != partition.part(static_cast<std::size_t>(target))) {
        RegularityFailure f;
        f.condition = 'b';
        f.parts = {static_cast<int>(p)};
        f.element = g;
        f.message = "image of part " + std::to_string(p) + " under " + std::string(name(g)) + " is not a part";
        report.failure = std::move(f);
        return report;
      }
      row[p] = target;
    }
  }
  report.action = action;

  // (c)
  const auto counts = bin_triple_intersections(partition, jobs);
  ConstantTable table(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t kk = 0; kk < k; ++kk) {
        const std::size_t bin = (i * k + j) * k + kk;
        for (std::size_t l = 0; l < k; ++l) {
          const PairSet& L = partition.part(l);
          const std::size_t first = *L.least_rank();
          const int value = counts[first][bin];
          std::optional<std::size_t> other;
          for (std::size_t r = first + 1; r < counts.size() && !other; ++r) {
            if (L.test_rank(r) && counts[r][bin] != value) other = r;
          }
          if (other) {
            RegularityFailure f;
            f.condition = 'c';
            f.parts = {static_cast<int>(i), static_cast<int>(j), static_cast<int>(kk), static_cast<int>(l)};
            f.pairs = {ConstantWitness{L.unrank(first), value}, ConstantWitness{L.unrank(*other), counts[*other][bin]}};
            f.message = "p^L_{IJK} not constant for (I,J,K,L) = (" + std::to_string(i) + "," + std::to_string(j) +
                        "," + std::to_string(kk) + "," + std::to_string(l) + "): " + to_string(f.pairs[0].pair) +
                        " gives " + std::to_string(f.pairs[0].count) + ", " + to_string(f.pairs[1].pair) +
                        " gives " + std::to_string(f.pairs[1].count);
            report.failure = std::move(f);
            return report;
          }
          table.at(i, j, kk, l) = value;
        }
      }
    }
  }
  report.constants = std::move(table);
  report.ok = true;
  return report;
}

TriplePartition build_ast(const IndexPartition& partition) {
  const ASTRegularityReport report = is_ast_regular(partition);
  if (!report.ok) throw Error(ErrorCode::NotASTRegular, report.failure->message);
  const Domain d = make_domain(partition.n());
  auto trivial = trivial_relations(d);
  std::vector<TernaryRelation> relations(trivial.begin(), trivial.end());
  for (const PairSet& part : partition.parts()) relations.push_back(expand(part));
  return TriplePartition(d.n, std::move(relations));
}

IndexPartition extract_partition(const TriplePartition& ast) {
  const Domain d = make_domain(ast.n());
  const auto trivial = trivial_relations(d);
  if (ast.size() < 5) {
    throw Error(ErrorCode::NotCirculantAST, "an AST needs the four trivial relations and at least one more");
  }
  for (std::size_t id = 0; id < 4; ++id) {
    if (ast.relation(static_cast<int>(id)) != trivial[id]) {
      throw Error(ErrorCode::NotCirculantAST, "relation " + std::to_string(id) + " is not the trivial relation R" +
                                                  std::to_string(id));
    }
  }
  std::vector<PairSet> parts;
  for (int id = 4; id <= ast.m(); ++id) {
    try {
      parts.push_back(extract(ast.relation(id)));
    } catch (const Error& e) {
      throw Error(ErrorCode::NotCirculantAST, "relation " + std::to_string(id) + ": " + e.what());
    }
  }
  return IndexPartition(d.n, std::move(parts));
}

}  // namespace circast
