#include "beepsim/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "beepsim/rng.hpp"

namespace beepsim {

Graph::Graph(std::size_t node_count, const std::vector<Edge>& edges) {
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw std::invalid_argument("edge endpoint out of range: (" +
                                  std::to_string(u) + ", " + std::to_string(v) +
                                  ") with " + std::to_string(node_count) +
                                  " nodes");
    }
    if (u == v) {
      throw std::invalid_argument("self-loop at node " + std::to_string(u));
    }
  }
  std::vector<std::uint32_t> deg(node_count, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  offsets_.assign(node_count + 1, 0);
  for (std::size_t v = 0; v < node_count; ++v) {
    offsets_[v + 1] = offsets_[v] + deg[v];
  }
  adjacency_.resize(2 * edges.size());
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    adjacency_[cursor[u]++] = v;
    adjacency_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    auto begin = adjacency_.begin() + offsets_[v];
    auto end = adjacency_.begin() + offsets_[v + 1];
    std::sort(begin, end);
    if (std::adjacent_find(begin, end) != end) {
      throw std::invalid_argument("duplicate edge at node " + std::to_string(v));
    }
  }
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
  if (u >= node_count() || v >= node_count()) return false;
  const auto nb = neighbours(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Graph::Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::uint32_t v = 0; v < node_count(); ++v) {
    for (std::uint32_t u : neighbours(v)) {
      if (v < u) out.emplace_back(v, u);
    }
  }
  return out;
}

Graph make_complete(std::size_t n) {
  if (n == 0) throw std::invalid_argument("complete graph needs n >= 1");
  std::vector<Graph::Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

Graph make_ring(std::size_t n) {
  if (n < 3) throw std::invalid_argument("ring needs n >= 3");
  std::vector<Graph::Edge> edges;
  edges.reserve(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    edges.emplace_back(v, static_cast<std::uint32_t>((v + 1) % n));
  }
  return Graph(n, edges);
}

Graph make_path(std::size_t n) {
  if (n == 0) throw std::invalid_argument("path needs n >= 1");
  std::vector<Graph::Edge> edges;
  for (std::uint32_t v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges);
}

Graph make_star(std::size_t leaves) {
  std::vector<Graph::Edge> edges;
  for (std::uint32_t v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph(leaves + 1, edges);
}

Graph make_empty(std::size_t n) { return Graph(n, {}); }

Graph make_erdos_renyi(std::size_t n, double edge_prob, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random graph needs n >= 1");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw std::invalid_argument("edge probability must be in [0, 1]");
  }
  // Dedicated stream: graph sampling never shares randomness with runs.
  RngStream rng = RngStream::derive(seed, 0x6772617068ULL);
  std::vector<Graph::Edge> edges;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (rng.next_double() < edge_prob) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

std::vector<Graph::Edge> wheel_spokes(const WheelSpec& spec) {
  if (spec.spokes == 0 || spec.spacing == 0) {
    throw std::invalid_argument("wheel needs spokes >= 1 and spacing >= 1");
  }
  const std::size_t n = 4 * spec.spokes * spec.spacing;
  std::vector<Graph::Edge> chords;
  const std::size_t want_odd = spec.parity == WheelParity::Odd ? 1 : 0;
  for (std::size_t i = 1; i <= 2 * spec.spokes; ++i) {
    if (i % 2 != want_odd) continue;
    const auto a = static_cast<std::uint32_t>((i * spec.spacing) % n);
    const auto b =
        static_cast<std::uint32_t>(((i + 2 * spec.spokes) * spec.spacing) % n);
    chords.emplace_back(a, b);
  }
  return chords;
}

Graph make_wheel(const WheelSpec& spec) {
  const auto chords = wheel_spokes(spec);
  const std::size_t n = 4 * spec.spokes * spec.spacing;
  std::vector<Graph::Edge> edges;
  edges.reserve(n + chords.size());
  for (std::uint32_t v = 0; v < n; ++v) {
    edges.emplace_back(v, static_cast<std::uint32_t>((v + 1) % n));
  }
  edges.insert(edges.end(), chords.begin(), chords.end());
  return Graph(n, edges);
}

Graph square(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<Graph::Edge> edges;
  std::vector<std::uint32_t> stamp(n, UINT32_MAX);
  for (std::uint32_t v = 0; v < n; ++v) {
    stamp[v] = v;
    for (std::uint32_t u : g.neighbours(v)) {
      stamp[u] = v;
      if (v < u) edges.emplace_back(v, u);
    }
    for (std::uint32_t u : g.neighbours(v)) {
      for (std::uint32_t w : g.neighbours(u)) {
        if (stamp[w] != v) {
          stamp[w] = v;
          if (v < w) edges.emplace_back(v, w);
        }
      }
    }
  }
  return Graph(n, edges);
}

std::size_t max_degree(const Graph& g) {
  std::size_t best = 0;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    best = std::max(best, g.degree(v));
  }
  return best;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("edge list line " + std::to_string(line_no) + ": " +
                           what);
}

}  // namespace

Graph load_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    ++line_no;
    return false;
  };

  if (!next_line()) parse_fail(1, "missing header");
  std::istringstream header(line);
  long long n = -1, m = -1;
  std::string extra;
  if (!(header >> n >> m) || (header >> extra) || n < 0 || m < 0) {
    parse_fail(line_no, "expected header 'n m'");
  }

  std::vector<Graph::Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) parse_fail(line_no, "unexpected end of input, expected " +
                                              std::to_string(m) + " edges");
    std::istringstream row(line);
    long long u = -1, v = -1;
    if (!(row >> u >> v) || (row >> extra) || u < 0 || v < 0) {
      parse_fail(line_no, "expected edge 'u v'");
    }
    if (u >= n || v >= n) parse_fail(line_no, "node index out of range");
    if (u == v) parse_fail(line_no, "self-loop");
    edges.emplace_back(static_cast<std::uint32_t>(u),
                       static_cast<std::uint32_t>(v));
  }
  if (next_line()) parse_fail(line_no, "trailing content after edge list");

  try {
    return Graph(static_cast<std::size_t>(n), edges);
  } catch (const std::invalid_argument& e) {
    // The only validation left to the constructor is duplicates; find the
    // line so the error is actionable.
    std::vector<Graph::Edge> seen;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto [u, v] = edges[i];
      if (u > v) std::swap(u, v);
      for (const auto& [a, b] : seen) {
        if (a == u && b == v) parse_fail(i + 2, "duplicate edge");
      }
      seen.emplace_back(u, v);
    }
    throw;  // something else; rethrow as-is
  }
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_edge_list(buf.str());
}

std::string save_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace beepsim
