#include "circast/groups.hpp"

#include <cctype>
#include <deque>

#include "circast/circulant.hpp"

namespace circast {

Permutation::Permutation(int n) : images_(static_cast<std::size_t>(n)) {
  for (int x = 0; x < n; ++x) images_[static_cast<std::size_t>(x)] = x;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> hit(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= degree() || hit[static_cast<std::size_t>(v)]) {
      throw Error(ErrorCode::MalformedCycles, "image list is not a permutation");
    }
    hit[static_cast<std::size_t>(v)] = 1;
  }
}

std::string Permutation::cycles() const {
  std::string out;
  std::vector<char> done(images_.size(), 0);
  for (int start = 0; start < degree(); ++start) {
    if (done[static_cast<std::size_t>(start)] || (*this)(start) == start) continue;
    out += "(";
    int x = start;
    do {
      if (x != start) out += " ";
      out += std::to_string(x);
      done[static_cast<std::size_t>(x)] = 1;
      x = (*this)(x);
    } while (x != start);
    out += ")";
  }
  return out;
}

Permutation parse_cycles(std::string_view text, int n) {
  if (n < 1) throw Error(ErrorCode::MalformedCycles, "degree must be positive");
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) images[static_cast<std::size_t>(x)] = x;
  std::vector<char> used(static_cast<std::size_t>(n), 0);

  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) ++pos;
  };
  auto fail = [&](const std::string& why) {
    return Error(ErrorCode::MalformedCycles, why + " in \"" + std::string(text) + "\"");
  };

  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') throw fail("expected '('");
    ++pos;
    std::vector<int> cycle;
    skip_space();
    while (pos < text.size() && text[pos] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) throw fail("unexpected character");
      long long value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos] - '0');
        if (value >= n) throw fail("point out of range");
        ++pos;
      }
      const int point = static_cast<int>(value);
      if (used[static_cast<std::size_t>(point)]) throw fail("point " + std::to_string(point) + " repeated");
      used[static_cast<std::size_t>(point)] = 1;
      cycle.push_back(point);
      skip_space();
    }
    if (pos >= text.size()) throw fail("unterminated cycle");
    ++pos;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      images[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    }
    skip_space();
  }
  return Permutation(std::move(images));
}

namespace {

void check_generators(const GroupSpec& group) {
  for (const Permutation& g : group.generators) {
    if (g.degree() != group.n) throw Error(ErrorCode::MalformedCycles, "generator acts on a different set");
  }
}

}  // namespace

TriplePartition orbit_partition_on_triples(const GroupSpec& group) {
  const Domain d = make_domain(group.n);
  check_generators(group);
  const int n = d.n;
  std::vector<int> orbit_of(cube_index(n, n - 1, n - 1, n - 1) + 1, -1);
  std::vector<std::vector<Triple>> orbits;

  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        const Triple seed{x, y, z};
        if (!pairwise_distinct(seed) || orbit_of[cube_index(n, x, y, z)] != -1) continue;
        const int id = static_cast<int>(orbits.size());
        std::vector<Triple> orbit{seed};
        orbit_of[cube_index(n, x, y, z)] = id;
        std::deque<Triple> queue{seed};
        while (!queue.empty()) {
          const Triple t = queue.front();
          queue.pop_front();
          for (const Permutation& g : group.generators) {
            const Triple img{g(t[0]), g(t[1]), g(t[2])};
            int& slot = orbit_of[cube_index(n, img[0], img[1], img[2])];
            if (slot != -1) continue;
            slot = id;
            orbit.push_back(img);
            queue.push_back(img);
          }
        }
        orbits.push_back(std::move(orbit));
      }
    }
  }

  auto trivial = trivial_relations(d);
  std::vector<TernaryRelation> relations(trivial.begin(), trivial.end());
  for (auto& orbit : orbits) relations.emplace_back(n, std::move(orbit));
  return TriplePartition(n, std::move(relations));
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

int least_primitive_root(int p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (p == 2) return 1;
  for (int g = 2; g < p; ++g) {
    long long power = 1;
    int order = 0;
    do {
      power = power * g % p;
      ++order;
    } while (power != 1);
    if (order == p - 1) return g;
  }
  throw Error(ErrorCode::InternalError, "no primitive root found");
}

GroupSpec agl1(int p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  const int g = least_primitive_root(p);
  std::vector<int> shift(static_cast<std::size_t>(p));
  std::vector<int> scale(static_cast<std::size_t>(p));
  for (int x = 0; x < p; ++x) {
    shift[static_cast<std::size_t>(x)] = (x + 1) % p;
    scale[static_cast<std::size_t>(x)] = static_cast<int>(static_cast<long long>(g) * x % p);
  }
  return GroupSpec{p, {Permutation(std::move(shift)), Permutation(std::move(scale))}};
}

bool is_two_transitive(const GroupSpec& group) {
  const int n = group.n;
  check_generators(group);
  if (n < 2) return false;
  std::vector<char> seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  auto index = [n](int x, int y) { return static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + static_cast<std::size_t>(y); };
  std::deque<std::pair<int, int>> queue{{0, 1}};
  seen[index(0, 1)] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    for (const Permutation& g : group.generators) {
      const int gx = g(x);
      const int gy = g(y);
      if (seen[index(gx, gy)]) continue;
      seen[index(gx, gy)] = 1;
      ++reached;
      queue.emplace_back(gx, gy);
    }
  }
  return reached == static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1);
}

bool shift_invariance_check(const TriplePartition& partition) {
  for (int id = 4; id <= partition.m(); ++id) {
    if (!is_circulant(partition.relation(id))) return false;
  }
  return true;
}

}  // namespace circast
