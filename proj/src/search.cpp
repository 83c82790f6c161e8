#include "circast/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <limits>
#include <thread>

#include "circast/astcheck.hpp"

namespace circast {

void enumerate_regular_subsets(const PairSet& available, Pair containing, int valency,
                               const std::function<bool(const PairSet&)>& emit) {
  const int n = available.n();
  if (valency < 1 || !available.contains(containing)) return;

  // cols[r]: available columns of row r in increasing order.
  std::vector<std::vector<int>> cols(static_cast<std::size_t>(n));
  // later[r][c]: rows strictly after r in which column c is available.
  std::vector<std::vector<int>> later(static_cast<std::size_t>(n + 1), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int r = 1; r < n; ++r) {
    for (int c = 1; c < n; ++c) {
      if (c != r && available.contains({r, c})) cols[static_cast<std::size_t>(r)].push_back(c);
    }
  }
  for (int r = n - 1; r >= 1; --r) {
    later[static_cast<std::size_t>(r - 1)] = later[static_cast<std::size_t>(r)];
    for (int c : cols[static_cast<std::size_t>(r)]) ++later[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c)];
  }

  std::vector<int> col_count(static_cast<std::size_t>(n), 0);
  PairSet current(n);
  bool stop = false;

  std::function<void(int)> next_row;
  std::function<void(int, std::size_t, int)> pick;

  // Every column must still be able to reach `valency` from rows after r.
  auto feasible_after = [&](int r) {
    for (int c = 1; c < n; ++c) {
      const int have = col_count[static_cast<std::size_t>(c)];
      if (have > valency || have + later[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] < valency) return false;
    }
    return true;
  };

  pick = [&](int r, std::size_t idx, int chosen) {
    if (stop) return;
    if (chosen == valency) {
      if (r == containing.i && !current.contains(containing)) return;
      if (feasible_after(r)) next_row(r + 1);
      return;
    }
    const auto& row = cols[static_cast<std::size_t>(r)];
    for (std::size_t k = idx; k < row.size(); ++k) {
      if (row.size() - k < static_cast<std::size_t>(valency - chosen)) break;
      const int c = row[k];
      if (r == containing.i && c > containing.j && !current.contains(containing)) break;
      if (col_count[static_cast<std::size_t>(c)] >= valency) continue;
      ++col_count[static_cast<std::size_t>(c)];
      current.insert({r, c});
      pick(r, k + 1, chosen + 1);
      current.erase({r, c});
      --col_count[static_cast<std::size_t>(c)];
      if (stop) return;
    }
  };

  next_row = [&](int r) {
    if (stop) return;
    if (r == n) {
      if (!emit(current)) stop = true;
      return;
    }
    pick(r, 0, 0);
  };

  if (feasible_after(0)) next_row(1);
}

std::vector<PairSet> enumerate_candidate_parts(int n, Pair containing, int max_nI) {
  const PairSet universe = build_pair_universe(make_domain(n));
  std::vector<PairSet> out;
  for (int k = 1; k <= std::min(max_nI, n - 2); ++k) {
    enumerate_regular_subsets(universe, containing, k, [&](const PairSet& s) {
      out.push_back(s);
      return true;
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct SharedState {
  std::optional<Clock::time_point> deadline;
  std::atomic<bool> timed_out{false};
  std::atomic<std::size_t> cutoff{std::numeric_limits<std::size_t>::max()};
};

class Searcher {
 public:
  Searcher(const SearchConfig& config, SharedState& shared, std::size_t branch)
      : config_(config), n_(config.n), universe_size_(PairSet::universe_size(config.n)), shared_(shared),
        branch_(branch) {
    max_valency_ = n_ - 2;
    if (config.max_nI) max_valency_ = std::min(max_valency_, *config.max_nI);
    if (config.require_all_thin) max_valency_ = std::min(max_valency_, 1);
  }

  /// Sym(3)-closed choices for the part containing the least uncovered pair.
  std::vector<std::vector<PairSet>> candidate_orbits(const PairSet& covered, Pair least) const {
    PairSet available = build_pair_universe(Domain{n_});
    available -= covered;
    std::vector<std::vector<PairSet>> out;
    for (int k = 1; k <= max_valency_; ++k) {
      enumerate_regular_subsets(available, least, k, [&](const PairSet& part) {
        if (config_.require_symmetric && symmetrise(part) != part) return true;
        std::vector<PairSet> orbit{part};
        for (Sym3 g : kSym3All) {
          PairSet image = sym3_image(part, g);
          if (std::find(orbit.begin(), orbit.end(), image) != orbit.end()) continue;
          if (image.intersects(covered)) return true;
          for (const PairSet& other : orbit) {
            if (image.intersects(other)) return true;
          }
          if (!regularity_stats(image).ok) return true;
          orbit.push_back(std::move(image));
        }
        out.push_back(std::move(orbit));
        return true;
      });
    }
    return out;
  }

  void run(std::vector<PairSet>& parts, PairSet& covered) { dfs(parts, covered); }

  std::vector<IndexPartition> found;
  std::uint64_t nodes = 0;
  bool aborted = false;

 private:
  bool should_stop() {
    if (aborted) return true;
    if (branch_ >= shared_.cutoff.load(std::memory_order_relaxed) || shared_.timed_out.load(std::memory_order_relaxed)) {
      aborted = true;
    } else if (shared_.deadline && (nodes & 63) == 0 && Clock::now() > *shared_.deadline) {
      shared_.timed_out = true;
      aborted = true;
    }
    return aborted;
  }

  // Rejects the node if two pairs of the same part already have all their
  // triple-intersection counts fixed and those counts differ.
  bool final_counts_consistent(const std::vector<PairSet>& parts) const {
    std::vector<int> owner(universe_size_, -1);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      for (std::size_t r = 0; r < universe_size_; ++r) {
        if (parts[k].test_rank(r)) owner[r] = static_cast<int>(k);
      }
    }
    const PairSet& probe = parts.front();
    const long long width = static_cast<long long>(parts.size());
    std::vector<std::vector<long long>> reference(parts.size());
    std::vector<long long> keys;
    for (std::size_t r = 0; r < universe_size_; ++r) {
      const int l = owner[r];
      if (l < 0) continue;
      const Pair yz = probe.unrank(r);
      keys.clear();
      bool fixed = true;
      for (int w = 1; w < n_ && fixed; ++w) {
        if (w == yz.i || w == yz.j) continue;
        const int i = owner[probe.rank({mod(yz.i - w, n_), mod(yz.j - w, n_)})];
        const int j = owner[probe.rank({w, yz.j})];
        const int k = owner[probe.rank({yz.i, w})];
        if (i < 0 || j < 0 || k < 0) fixed = false;
        keys.push_back((i * width + j) * width + k);
      }
      if (!fixed) continue;
      std::sort(keys.begin(), keys.end());
      auto& ref = reference[static_cast<std::size_t>(l)];
      if (ref.empty()) {
        ref = keys;
      } else if (ref != keys) {
        return false;
      }
    }
    return true;
  }

  void dfs(std::vector<PairSet>& parts, PairSet& covered) {
    ++nodes;
    if (should_stop()) return;
    if (covered.size() == universe_size_) {
      IndexPartition partition(n_, parts);
      if (is_ast_regular(partition).ok) found.push_back(std::move(partition));
      return;
    }
    PairSet uncovered = build_pair_universe(Domain{n_});
    uncovered -= covered;
    const Pair least = *uncovered.least();
    for (auto& orbit : candidate_orbits(covered, least)) {
      const std::size_t before = parts.size();
      const PairSet saved = covered;
      for (const PairSet& part : orbit) {
        parts.push_back(part);
        covered |= part;
      }
      if (final_counts_consistent(parts)) dfs(parts, covered);
      parts.resize(before);
      covered = saved;
      if (aborted) return;
    }
  }

  const SearchConfig& config_;
  int n_;
  std::size_t universe_size_;
  int max_valency_;
  SharedState& shared_;
  std::size_t branch_;
};

struct BranchOutcome {
  std::vector<IndexPartition> found;
  std::uint64_t nodes = 0;
  bool done = false;
};

}  // namespace

IndexPartition apply_multiplier(const IndexPartition& partition, int c) {
  const int n = partition.n();
  std::vector<PairSet> parts;
  for (const PairSet& part : partition.parts()) {
    PairSet image(n);
    part.for_each([&](Pair p) { image.insert({mod(static_cast<long long>(c) * p.i, n), mod(static_cast<long long>(c) * p.j, n)}); });
    parts.push_back(std::move(image));
  }
  return IndexPartition(n, std::move(parts));
}

std::vector<SearchEntry> dedupe_multiplier(const std::vector<SearchEntry>& results, int n) {
  std::vector<int> multipliers;
  for (int c = 1; c < n; ++c) {
    if (std::gcd(c, n) == 1) multipliers.push_back(c);
  }
  std::vector<IndexPartition> representatives;
  std::vector<SearchEntry> out;
  for (const SearchEntry& entry : results) {
    IndexPartition best = entry.partition;
    for (int c : multipliers) {
      IndexPartition image = apply_multiplier(entry.partition, c);
      if (image < best) best = std::move(image);
    }
    if (std::find(representatives.begin(), representatives.end(), best) != representatives.end()) continue;
    representatives.push_back(best);
    if (best == entry.partition) {
      out.push_back(entry);
    } else {
      out.push_back(SearchEntry{best, is_ast_regular(best)});
    }
  }
  std::sort(out.begin(), out.end(), [](const SearchEntry& a, const SearchEntry& b) { return a.partition < b.partition; });
  return out;
}

SearchResult search_ast_regular(const SearchConfig& config) {
  const Domain d = make_domain(config.n);
  const auto start = Clock::now();
  SharedState shared;
  if (config.time_budget) shared.deadline = start + *config.time_budget;

  SearchResult result;
  const PairSet universe = build_pair_universe(d);
  const Pair first = *universe.least();
  const PairSet none(d.n);
  const std::vector<std::vector<PairSet>> roots = Searcher(config, shared, 0).candidate_orbits(none, first);

  std::vector<BranchOutcome> outcomes(roots.size());
  std::mutex mutex;
  std::atomic<std::size_t> next{0};
  const bool early_stop = config.limit && config.dedupe == Dedupe::none;

  auto record = [&](std::size_t b, Searcher& searcher) {
    std::lock_guard lock(mutex);
    outcomes[b].found = std::move(searcher.found);
    outcomes[b].nodes = searcher.nodes;
    outcomes[b].done = !searcher.aborted;
    if (!early_stop) return;
    // The cutoff is the shortest fully explored prefix of branches holding
    // at least `limit` results, so it does not depend on scheduling.
    std::size_t total = 0;
    for (std::size_t k = 0; k < outcomes.size() && outcomes[k].done; ++k) {
      total += outcomes[k].found.size();
      if (total >= *config.limit) {
        std::size_t expected = shared.cutoff.load();
        while (k + 1 < expected && !shared.cutoff.compare_exchange_weak(expected, k + 1)) {
        }
        break;
      }
    }
  };

  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= roots.size()) return;
      Searcher searcher(config, shared, b);
      if (b < shared.cutoff.load() && !shared.timed_out.load()) {
        std::vector<PairSet> parts = roots[b];
        PairSet covered(d.n);
        for (const PairSet& part : parts) covered |= part;
        searcher.run(parts, covered);
      } else {
        searcher.aborted = true;
      }
      record(b, searcher);
    }
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  const std::size_t used = std::min(shared.cutoff.load(), roots.size());
  std::vector<IndexPartition> found;
  result.nodes = 1;
  bool all_done = true;
  for (std::size_t b = 0; b < roots.size(); ++b) {
    if (!outcomes[b].done) all_done = false;
    if (b >= used && early_stop) continue;
    result.nodes += outcomes[b].nodes;
    for (auto& p : outcomes[b].found) found.push_back(std::move(p));
  }
  std::sort(found.begin(), found.end());

  for (IndexPartition& partition : found) {
    ASTRegularityReport report = is_ast_regular(partition);
    result.partitions.push_back(SearchEntry{std::move(partition), std::move(report)});
  }
  if (config.dedupe == Dedupe::multiplier) result.partitions = dedupe_multiplier(result.partitions, d.n);
  bool truncated = false;
  if (config.limit && result.partitions.size() > *config.limit) {
    result.partitions.resize(*config.limit);
    truncated = true;
  }

  for (const SearchEntry& entry : result.partitions) {
    if (!entry.report.ok || !verify_ast(build_ast(entry.partition)).ok) {
      throw Error(ErrorCode::InternalError, "search emitted a partition that fails verification");
    }
  }

  result.complete = all_done && !truncated && !shared.timed_out.load();
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace circast
