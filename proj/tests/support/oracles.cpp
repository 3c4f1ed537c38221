#include "support/oracles.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace beepsim::testsupport {

namespace {

// Edge bitmask helpers for small-graph enumeration: bit index of the pair
// (i, j), i < j, in a fixed ordering.
std::size_t pair_bit(std::size_t n, std::size_t i, std::size_t j) {
  std::size_t bit = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (a == i && b == j) return bit;
      ++bit;
    }
  }
  return ~std::size_t{0};
}

std::uint64_t permute_mask(std::size_t n, std::uint64_t mask,
                           const std::vector<std::size_t>& perm) {
  std::uint64_t out = 0;
  std::size_t bit = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b, ++bit) {
      if (mask & (std::uint64_t{1} << bit)) {
        std::size_t i = perm[a], j = perm[b];
        if (i > j) std::swap(i, j);
        out |= std::uint64_t{1} << pair_bit(n, i, j);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Graph> all_graphs_up_to(std::size_t max_nodes) {
  std::vector<Graph> out;
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    const std::size_t pairs = n * (n - 1) / 2;
    std::vector<std::size_t> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      // keep the mask only if it is the smallest among its relabellings
      std::vector<std::size_t> perm = identity;
      bool canonical = true;
      do {
        if (permute_mask(n, mask, perm) < mask) {
          canonical = false;
          break;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (!canonical) continue;

      std::vector<Graph::Edge> edges;
      std::size_t bit = 0;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b, ++bit) {
          if (mask & (std::uint64_t{1} << bit)) {
            edges.emplace_back(static_cast<std::uint32_t>(a),
                               static_cast<std::uint32_t>(b));
          }
        }
      }
      out.emplace_back(n, edges);
    }
  }
  return out;
}

std::vector<std::vector<int>> distance_matrix(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<std::uint32_t> queue{static_cast<std::uint32_t>(s)};
    dist[s][s] = 0;
    while (!queue.empty()) {
      const std::uint32_t v = queue.front();
      queue.pop_front();
      for (std::uint32_t u : g.neighbours(v)) {
        if (dist[s][u] < 0) {
          dist[s][u] = dist[s][v] + 1;
          queue.push_back(u);
        }
      }
    }
  }
  return dist;
}

bool is_maximal_independent(const Graph& g, const std::vector<bool>& members) {
  const std::size_t n = g.node_count();
  for (std::size_t v = 0; v < n; ++v) {
    bool member_neighbour = false;
    for (std::uint32_t u : g.neighbours(v)) {
      if (members[u]) member_neighbour = true;
    }
    if (members[v] && member_neighbour) return false;
    if (!members[v] && !member_neighbour) return false;
  }
  return true;
}

std::vector<std::vector<bool>> all_maximal_independent_sets(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<bool>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<bool> members(n);
    for (std::size_t v = 0; v < n; ++v) members[v] = mask & (std::uint64_t{1} << v);
    if (is_maximal_independent(g, members)) out.push_back(std::move(members));
  }
  return out;
}

bool proper_at_distance(const Graph& g, const std::vector<std::int64_t>& colours,
                        int max_dist) {
  const auto dist = distance_matrix(g);
  for (std::size_t a = 0; a < g.node_count(); ++a) {
    for (std::size_t b = a + 1; b < g.node_count(); ++b) {
      if (dist[a][b] >= 1 && dist[a][b] <= max_dist && colours[a] == colours[b]) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace beepsim::testsupport
