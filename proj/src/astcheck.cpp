#include "circast/astcheck.hpp"

#include <algorithm>
#include <thread>

namespace circast {

namespace {

AxiomFailure make_failure(std::string axiom, std::vector<int> relations, std::string message) {
  AxiomFailure f;
  f.axiom = std::move(axiom);
  f.relations = std::move(relations);
  f.message = std::move(message);
  return f;
}

}  // namespace

bool verify_trivial(const TriplePartition& ast) {
  if (ast.size() < 4) return false;
  const auto trivial = trivial_relations(make_domain(ast.n()));
  for (std::size_t id = 0; id < 4; ++id) {
    if (ast.relation(static_cast<int>(id)) != trivial[id]) return false;
  }
  return true;
}

Checked<std::vector<int>> verify_a1(const TriplePartition& ast) {
  const int n = ast.n();
  const int m = ast.m();
  const auto labels = ast.label_cube();
  Checked<std::vector<int>> out;
  if (m < 4) {
    out.failure = make_failure("A1", {}, "no nontrivial relations");
    return out;
  }
  const auto nontrivial = static_cast<std::size_t>(m - 3);
  std::vector<int> reference(nontrivial, -1);
  std::vector<int> counts(nontrivial);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      std::fill(counts.begin(), counts.end(), 0);
      for (int z = 0; z < n; ++z) {
        const int id = labels[cube_index(n, x, y, z)];
        if (id >= 4) ++counts[static_cast<std::size_t>(id - 4)];
      }
      for (std::size_t i = 0; i < nontrivial; ++i) {
        const int id = static_cast<int>(i) + 4;
        if (reference[i] == -1) reference[i] = counts[i];
        if (counts[i] == 0 || counts[i] != reference[i]) {
          AxiomFailure f;
          f.axiom = "A1";
          f.relations = {id};
          f.pairs = {{0, 1}, {x, y}};
          f.counts = {reference[i], counts[i]};
          f.message = "relation " + std::to_string(id) + ": pair (0,1) has " + std::to_string(reference[i]) +
                      " completions z, pair (" + std::to_string(x) + "," + std::to_string(y) + ") has " +
                      std::to_string(counts[i]);
          out.failure = std::move(f);
          return out;
        }
      }
    }
  }
  out.value = std::move(reference);
  return out;
}

Checked<Sym3Action> verify_a3(const TriplePartition& ast) {
  const int n = ast.n();
  const auto labels = ast.label_cube();
  Checked<Sym3Action> out;
  Sym3Action action;
  for (Sym3 g : kSym3All) {
    auto& row = action[index_of(g)];
    row.resize(ast.size());
    for (std::size_t id = 0; id < ast.size(); ++id) {
      const TernaryRelation& r = ast.relation(static_cast<int>(id));
      const Triple first = permute_coordinates(r.triples().front(), g);
      const int target = labels[cube_index(n, first[0], first[1], first[2])];
      bool matches = ast.relation(target).size() == r.size();
      for (std::size_t t = 0; matches && t < r.size(); ++t) {
        const Triple img = permute_coordinates(r.triples()[t], g);
        matches = labels[cube_index(n, img[0], img[1], img[2])] == target;
      }
      if (!matches) {
        AxiomFailure f;
        f.axiom = "A3";
        f.relations = {static_cast<int>(id)};
        f.message = "image of relation " + std::to_string(id) + " under " + std::string(name(g)) +
                    " is not a relation of the partition";
        out.failure = std::move(f);
        return out;
      }
      row[id] = target;
    }
  }
  out.value = std::move(action);
  return out;
}

namespace {

using BinVector = std::vector<std::pair<long long, int>>;

struct RelationScan {
  BinVector bins;
  std::optional<AxiomFailure> failure;
};

RelationScan scan_relation(const TriplePartition& ast, const std::vector<int>& labels, int id) {
  const int n = ast.n();
  const long long width = ast.m() + 1;
  RelationScan result;
  std::vector<long long> keys(static_cast<std::size_t>(n));
  BinVector bins;
  const auto& triples = ast.relation(id).triples();
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const auto [x, y, z] = triples[t];
    for (int w = 0; w < n; ++w) {
      const long long i = labels[cube_index(n, w, y, z)];
      const long long j = labels[cube_index(n, x, w, z)];
      const long long k = labels[cube_index(n, x, y, w)];
      keys[static_cast<std::size_t>(w)] = (i * width + j) * width + k;
    }
    std::sort(keys.begin(), keys.end());
    bins.clear();
    for (long long key : keys) {
      if (!bins.empty() && bins.back().first == key) {
        ++bins.back().second;
      } else {
        bins.emplace_back(key, 1);
      }
    }
    if (t == 0) {
      result.bins = bins;
      continue;
    }
    if (bins != result.bins) {
      // Locate the least key whose count differs.
      std::map<long long, std::pair<int, int>> diff;
      for (const auto& [key, c] : result.bins) diff[key].first = c;
      for (const auto& [key, c] : bins) diff[key].second = c;
      for (const auto& [key, cs] : diff) {
        if (cs.first == cs.second) continue;
        const auto kk = static_cast<int>(key % width);
        const auto jj = static_cast<int>((key / width) % width);
        const auto ii = static_cast<int>(key / (width * width));
        AxiomFailure f;
        f.axiom = "A2";
        f.relations = {ii, jj, kk, id};
        f.triples = {triples.front(), triples[t]};
        f.counts = {cs.first, cs.second};
        f.message = "p_{" + std::to_string(ii) + "," + std::to_string(jj) + "," + std::to_string(kk) + "}^" +
                    std::to_string(id) + " is " + std::to_string(cs.first) + " at " + to_string(triples.front()) +
                    " but " + std::to_string(cs.second) + " at " + to_string(triples[t]);
        result.failure = std::move(f);
        break;
      }
      return result;
    }
  }
  return result;
}

}  // namespace

Checked<StructureTensor> verify_a2(const TriplePartition& ast, int jobs) {
  const auto labels = ast.label_cube();
  const std::size_t relations = ast.size();
  std::vector<RelationScan> scans(relations);

  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t id = begin; id < relations; id += stride) {
      scans[id] = scan_relation(ast, labels, static_cast<int>(id));
    }
  };
  const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, static_cast<int>(relations)));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
  }

  Checked<StructureTensor> out;
  StructureTensor tensor;
  tensor.n = ast.n();
  tensor.m = ast.m();
  const long long width = ast.m() + 1;
  for (std::size_t id = 0; id < relations; ++id) {
    if (scans[id].failure) {
      out.failure = std::move(scans[id].failure);
      return out;
    }
    for (const auto& [key, count] : scans[id].bins) {
      const auto k = static_cast<int>(key % width);
      const auto j = static_cast<int>((key / width) % width);
      const auto i = static_cast<int>(key / (width * width));
      tensor.p[{i, j, k, static_cast<int>(id)}] = count;
    }
  }
  out.value = std::move(tensor);
  return out;
}

Marginals count_marginals(const TriplePartition& ast) {
  const int n = ast.n();
  const auto labels = ast.label_cube();
  const std::size_t relations = ast.size();
  Marginals out;
  out.n1.assign(relations, std::nullopt);
  out.n2.assign(relations, std::nullopt);
  out.n3.assign(relations, std::nullopt);
  std::vector<bool> bad1(relations), bad2(relations), bad3(relations);
  std::vector<int> c1(relations), c2(relations), c3(relations);

  auto merge = [](std::optional<int>& slot, std::vector<bool>::reference bad, int count) {
    if (bad) return;
    if (!slot) {
      slot = count;
    } else if (*slot != count) {
      bad = true;
    }
  };

  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      std::fill(c1.begin(), c1.end(), 0);
      std::fill(c2.begin(), c2.end(), 0);
      std::fill(c3.begin(), c3.end(), 0);
      for (int z = 0; z < n; ++z) {
        ++c1[static_cast<std::size_t>(labels[cube_index(n, z, x, y)])];
        ++c2[static_cast<std::size_t>(labels[cube_index(n, x, z, y)])];
        ++c3[static_cast<std::size_t>(labels[cube_index(n, x, y, z)])];
      }
      for (std::size_t id = 0; id < relations; ++id) {
        merge(out.n1[id], bad1[id], c1[id]);
        merge(out.n2[id], bad2[id], c2[id]);
        merge(out.n3[id], bad3[id], c3[id]);
      }
    }
  }
  for (std::size_t id = 0; id < relations; ++id) {
    if (bad1[id]) out.n1[id].reset();
    if (bad2[id]) out.n2[id].reset();
    if (bad3[id]) out.n3[id].reset();
  }
  return out;
}

DerivedParameters derived_parameters(const StructureTensor& tensor) {
  DerivedParameters out;
  for (int i = 4; i <= tensor.m; ++i) {
    int s1 = 0;
    int s2 = 0;
    for (int k = 0; k <= tensor.m; ++k) {
      s1 += tensor.at(i, 2, k, 2);
      s2 += tensor.at(1, i, k, 1);
    }
    const auto idx = static_cast<std::size_t>(i - 4);
    if (idx < tensor.n1.size() && tensor.n1[idx] != s1) {
      throw Error(ErrorCode::IdentityViolation, "relation " + std::to_string(i) + ": sum_k p_{i2k}^2 = " +
                                                    std::to_string(s1) + " but n^(1) = " +
                                                    std::to_string(tensor.n1[idx]));
    }
    if (idx < tensor.n2.size() && tensor.n2[idx] != s2) {
      throw Error(ErrorCode::IdentityViolation, "relation " + std::to_string(i) + ": sum_k p_{1ik}^1 = " +
                                                    std::to_string(s2) + " but n^(2) = " +
                                                    std::to_string(tensor.n2[idx]));
    }
    out.n1.push_back(s1);
    out.n2.push_back(s2);
  }
  return out;
}

bool is_symmetric_action(const Sym3Action& action) {
  for (const auto& row : action) {
    for (std::size_t id = 4; id < row.size(); ++id) {
      if (row[id] != static_cast<int>(id)) return false;
    }
  }
  return true;
}

bool is_symmetric_ast(const TriplePartition& ast) {
  const auto a3 = verify_a3(ast);
  return a3.ok() && is_symmetric_action(*a3.value);
}

ASTReport verify_ast(const TriplePartition& ast, int jobs) {
  ASTReport report;
  if (!verify_trivial(ast)) {
    report.failures.push_back(make_failure("trivial", {0, 1, 2, 3}, "relations 0..3 are not R0..R3"));
    return report;
  }
  auto a1 = verify_a1(ast);
  if (!a1.ok()) {
    report.failures.push_back(std::move(*a1.failure));
    return report;
  }
  auto a3 = verify_a3(ast);
  if (!a3.ok()) {
    report.failures.push_back(std::move(*a3.failure));
    return report;
  }
  report.a3_action = *a3.value;
  report.symmetric = is_symmetric_action(*a3.value);
  auto a2 = verify_a2(ast, jobs);
  if (!a2.ok()) {
    report.failures.push_back(std::move(*a2.failure));
    return report;
  }
  StructureTensor tensor = std::move(*a2.value);

  const Marginals marginals = count_marginals(ast);
  for (int id = 4; id <= ast.m(); ++id) {
    const auto k = static_cast<std::size_t>(id);
    if (!marginals.n1[k] || !marginals.n2[k] || !marginals.n3[k]) {
      report.failures.push_back(make_failure("Eq1", {id}, "a marginal of relation " + std::to_string(id) +
                                                          " is not constant"));
      return report;
    }
    tensor.n1.push_back(*marginals.n1[k]);
    tensor.n2.push_back(*marginals.n2[k]);
    tensor.n3.push_back(*marginals.n3[k]);
  }
  if (tensor.n3 != *a1.value) {
    report.failures.push_back(make_failure("Eq1", {}, "counted n^(3) disagrees with A1"));
    return report;
  }
  try {
    derived_parameters(tensor);
  } catch (const Error& e) {
    report.failures.push_back(make_failure("Eq1", {}, e.what()));
    return report;
  }
  report.tensor = std::move(tensor);
  report.ok = true;
  return report;
}

PairSet symmetrise(const PairSet& index_set) {
  if (index_set.empty()) throw Error(ErrorCode::EmptyIndexSet, "cannot symmetrise an empty index set");
  PairSet out(index_set.n());
  for (Sym3 g : kSym3All) out |= sym3_image(index_set, g);
  return out;
}

}  // namespace circast
