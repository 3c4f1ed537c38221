#include <algorithm>
#include <set>
#include <stdexcept>

#include "beepsim/graph.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace beepsim;
namespace ts = beepsim::testsupport;

namespace {

// Independent validity check used across the generator tests.
void check_simple_and_symmetric(const Graph& g) {
  for (std::uint32_t v = 0; v < g.node_count(); ++v) {
    const auto nb = g.neighbours(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    for (std::uint32_t u : nb) {
      CHECK(u != v);
      CHECK(u < g.node_count());
      CHECK(g.has_edge(u, v));
      CHECK(g.has_edge(v, u));
    }
  }
  std::size_t total = 0;
  for (std::uint32_t v = 0; v < g.node_count(); ++v) total += g.degree(v);
  CHECK(total == 2 * g.edge_count());
}

}  // namespace

TEST_CASE("complete graphs have all pairs connected") {
  for (std::size_t n : {1, 2, 4, 10}) {
    const Graph g = make_complete(n);
    CHECK(g.node_count() == n);
    // count pairs the pedestrian way
    std::size_t pairs = 0;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        ++pairs;
        CHECK(g.has_edge(static_cast<std::uint32_t>(u),
                         static_cast<std::uint32_t>(v)));
      }
    }
    CHECK(g.edge_count() == pairs);
    for (std::size_t v = 0; v < n; ++v) CHECK(g.degree(v) == n - 1);
    check_simple_and_symmetric(g);
  }
  CHECK_THROWS_AS(make_complete(0), std::invalid_argument);
}

TEST_CASE("rings are 2-regular cycles") {
  const Graph g = make_ring(8);
  CHECK(g.node_count() == 8);
  CHECK(g.edge_count() == 8);
  for (std::size_t v = 0; v < 8; ++v) CHECK(g.degree(v) == 2);
  CHECK(g.has_edge(0, 7));
  CHECK(g.has_edge(3, 4));
  CHECK(!g.has_edge(0, 4));
  check_simple_and_symmetric(g);
  CHECK_THROWS_AS(make_ring(2), std::invalid_argument);

  const Graph triangle = make_ring(3);
  CHECK(triangle.edge_count() == 3);
}

TEST_CASE("paths, stars and empty graphs") {
  const Graph p = make_path(5);
  CHECK(p.edge_count() == 4);
  CHECK(p.degree(0) == 1);
  CHECK(p.degree(2) == 2);

  const Graph s = make_star(32);
  CHECK(s.node_count() == 33);
  CHECK(s.edge_count() == 32);
  CHECK(s.degree(0) == 32);
  for (std::size_t v = 1; v <= 32; ++v) CHECK(s.degree(v) == 1);
  CHECK(max_degree(s) == 32);

  const Graph lone = make_star(0);
  CHECK(lone.node_count() == 1);
  CHECK(lone.edge_count() == 0);

  const Graph e = make_empty(3);
  CHECK(e.node_count() == 3);
  CHECK(e.edge_count() == 0);
  CHECK(max_degree(e) == 0);
}

TEST_CASE("random graphs are deterministic in the seed and respect p") {
  const Graph empty = make_erdos_renyi(20, 0.0, 5);
  CHECK(empty.edge_count() == 0);
  const Graph full = make_erdos_renyi(20, 1.0, 5);
  CHECK(full.edge_count() == 190);

  const Graph a = make_erdos_renyi(50, 0.2, 99);
  const Graph b = make_erdos_renyi(50, 0.2, 99);
  CHECK(a.edges() == b.edges());
  const Graph c = make_erdos_renyi(50, 0.2, 100);
  CHECK(a.edges() != c.edges());
  check_simple_and_symmetric(a);

  CHECK_THROWS_AS(make_erdos_renyi(5, -0.1, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_erdos_renyi(5, 1.5, 0), std::invalid_argument);
}

TEST_CASE("smallest wheels match hand enumeration") {
  // one chord, spacing 1: a 4-cycle plus the chord 1-3
  const Graph w = make_wheel({1, 1, WheelParity::Odd});
  CHECK(w.node_count() == 4);
  CHECK(w.edge_count() == 5);
  CHECK(w.has_edge(1, 3));
  CHECK(w.degree(1) == 3);
  CHECK(w.degree(3) == 3);
  CHECK(w.degree(0) == 2);

  const Graph w2 = make_wheel({2, 2, WheelParity::Even});
  CHECK(w2.node_count() == 16);
  CHECK(w2.edge_count() == 18);
  std::size_t degree3 = 0;
  for (std::size_t v = 0; v < w2.node_count(); ++v) {
    if (w2.degree(v) == 3) ++degree3;
  }
  CHECK(degree3 == 4);
}

TEST_CASE("wheel size formulas hold for all small parameters") {
  for (std::size_t m = 1; m <= 8; ++m) {
    for (std::size_t s = 1; s <= 8; ++s) {
      for (WheelParity parity : {WheelParity::Odd, WheelParity::Even}) {
        const WheelSpec spec{m, s, parity};
        const Graph g = make_wheel(spec);
        CHECK(g.node_count() == 4 * m * s);
        CHECK(g.edge_count() == 4 * m * s + m);
        std::set<std::uint32_t> chord_ends;
        for (const auto& [a, b] : wheel_spokes(spec)) {
          chord_ends.insert(a);
          chord_ends.insert(b);
        }
        CHECK(chord_ends.size() == 2 * m);
        std::size_t degree3 = 0;
        for (std::size_t v = 0; v < g.node_count(); ++v) {
          if (g.degree(v) == 3) {
            ++degree3;
            CHECK(chord_ends.count(static_cast<std::uint32_t>(v)) == 1);
          } else {
            CHECK(g.degree(v) == 2);
          }
        }
        CHECK(degree3 == 2 * m);
        check_simple_and_symmetric(g);
      }
    }
  }
  CHECK_THROWS_AS(make_wheel({0, 1, WheelParity::Odd}), std::invalid_argument);
}

TEST_CASE("square connects exactly the pairs at distance 1 or 2") {
  // ring of 8: the square is 4-regular
  const Graph c8 = make_ring(8);
  const Graph c8sq = square(c8);
  for (std::size_t v = 0; v < 8; ++v) CHECK(c8sq.degree(v) == 4);

  // C_5 squared is complete
  CHECK(square(make_ring(5)).edge_count() == 10);

  // squaring is capped at the complete graph
  const Graph k5 = make_complete(5);
  CHECK(square(k5).edges() == k5.edges());

  // oracle comparison on assorted graphs
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = make_erdos_renyi(12, 0.2, seed);
    const Graph sq = square(g);
    const auto dist = ts::distance_matrix(g);
    for (std::uint32_t a = 0; a < 12; ++a) {
      for (std::uint32_t b = 0; b < 12; ++b) {
        if (a == b) continue;
        const bool expect = dist[a][b] == 1 || dist[a][b] == 2;
        CHECK(sq.has_edge(a, b) == expect);
      }
    }
    check_simple_and_symmetric(sq);
  }
}

TEST_CASE("graph constructor validates its input") {
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  const Graph g(3, {{0, 1}, {1, 2}});
  CHECK(g.edge_count() == 2);
}

TEST_CASE("edge list text round-trips") {
  const Graph g = load_edge_list("3 2\n0 1\n1 2\n");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK(!g.has_edge(0, 2));

  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Graph original = make_erdos_renyi(17, 0.25, seed);
    const Graph reloaded = load_edge_list(save_edge_list(original));
    CHECK(original.node_count() == reloaded.node_count());
    CHECK(original.edges() == reloaded.edges());
  }
}

TEST_CASE("edge list errors carry line numbers") {
  auto message_of = [](const std::string& text) {
    try {
      load_edge_list(text);
    } catch (const std::runtime_error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message_of("nonsense\n").find("line 1") != std::string::npos);
  CHECK(message_of("3 2\n0 1\n1 five\n").find("line 3") != std::string::npos);
  CHECK(message_of("3 2\n0 1\n1 7\n").find("out of range") != std::string::npos);
  CHECK(message_of("3 2\n0 1\n1 7\n").find("line 3") != std::string::npos);
  CHECK(message_of("3 1\n2 2\n").find("self-loop") != std::string::npos);
  CHECK(message_of("3 1\n2 2\n").find("line 2") != std::string::npos);
  CHECK(message_of("3 3\n0 1\n1 2\n1 0\n").find("duplicate") != std::string::npos);
  CHECK(message_of("3 3\n0 1\n1 2\n1 0\n").find("line 4") != std::string::npos);
  CHECK(message_of("3 2\n0 1\n").find("unexpected end") != std::string::npos);
  CHECK(message_of("3 1\n0 1\n1 2\n").find("trailing") != std::string::npos);
}

TEST_CASE("isomorphism-free enumeration matches known counts") {
  const auto graphs = ts::all_graphs_up_to(5);
  std::size_t by_n[6] = {0, 0, 0, 0, 0, 0};
  for (const Graph& g : graphs) ++by_n[g.node_count()];
  CHECK(by_n[1] == 1);
  CHECK(by_n[2] == 2);
  CHECK(by_n[3] == 4);
  CHECK(by_n[4] == 11);
  CHECK(by_n[5] == 34);
}
