#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace beepsim {

// Undirected simple graph over nodes 0..n-1, immutable once built.
// Node indices exist for engine bookkeeping only; the simulated nodes
// themselves are anonymous and never see them.
class Graph {
 public:
  using Edge = std::pair<std::uint32_t, std::uint32_t>;

  Graph() = default;

  // Builds the adjacency structure from an edge list. Throws
  // std::invalid_argument on out-of-range endpoints, self-loops or
  // duplicate edges.
  Graph(std::size_t node_count, const std::vector<Edge>& edges);

  std::size_t node_count() const {
    return offsets_.empty() ? 0 : offsets_.size() - 1;
  }
  std::size_t edge_count() const { return adjacency_.size() / 2; }

  std::size_t degree(std::size_t v) const {
    return offsets_[v + 1] - offsets_[v];
  }

  // Neighbours of v in increasing index order.
  std::span<const std::uint32_t> neighbours(std::size_t v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  bool has_edge(std::uint32_t u, std::uint32_t v) const;

  // Every edge once, with first endpoint smaller, sorted.
  std::vector<Edge> edges() const;

 private:
  std::vector<std::uint32_t> offsets_{0};
  std::vector<std::uint32_t> adjacency_;
};

// --- generators ---------------------------------------------------------

Graph make_complete(std::size_t n);   // n >= 1
Graph make_ring(std::size_t n);       // cycle, n >= 3
Graph make_path(std::size_t n);       // n >= 1
Graph make_star(std::size_t leaves);  // centre plus `leaves` leaves
Graph make_empty(std::size_t n);      // n isolated nodes

// Each unordered pair becomes an edge independently with edge_prob,
// deterministically from `seed`. The generator has its own stream, so the
// same graph can be replayed under different execution seeds.
Graph make_erdos_renyi(std::size_t n, double edge_prob, std::uint64_t seed);

// Lower-bound gadget: a cycle of length 4*spokes*spacing with `spokes`
// chords. Chord i (for i = 1..2*spokes, restricted to the chosen parity)
// connects the nodes at positions i*spacing and (i + 2*spokes)*spacing on
// the cycle. Yields 4*m*s nodes, 4*m*s + m edges and exactly 2m nodes of
// degree 3, where m = spokes and s = spacing.
enum class WheelParity { Odd, Even };

struct WheelSpec {
  std::size_t spokes = 1;   // m >= 1
  std::size_t spacing = 1;  // s >= 1
  WheelParity parity = WheelParity::Odd;
};

Graph make_wheel(const WheelSpec& spec);

// The chord endpoints of make_wheel(spec), in construction order.
std::vector<Graph::Edge> wheel_spokes(const WheelSpec& spec);

// --- derived graphs and properties --------------------------------------

// Graph with an edge wherever the input has a path of length 1 or 2.
Graph square(const Graph& g);

std::size_t max_degree(const Graph& g);

// --- edge-list text format ----------------------------------------------
//
// First line "n m", then exactly m lines "u v", one per edge. Parse errors
// report the offending line number.

Graph load_edge_list(const std::string& text);
Graph load_edge_list_file(const std::string& path);
std::string save_edge_list(const Graph& g);

}  // namespace beepsim
