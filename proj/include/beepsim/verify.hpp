#pragma once

#include <cstdint>
#include <vector>

#include "beepsim/engine.hpp"
#include "beepsim/graph.hpp"

namespace beepsim {

// Omniscient result checkers. They see the whole graph and all outputs;
// the simulated algorithms never do.

enum class ViolationKind {
  EdgeConflict,    // adjacent nodes share a colour
  NotIndependent,  // adjacent nodes both in the set
  NotMaximal,      // node out of the set with no neighbour in it
  WrongDegree,     // reported degree differs from the actual one
  OutOfPalette,    // colour outside the allowed range
};

const char* violation_name(ViolationKind kind);

struct Violation {
  static constexpr std::uint32_t kNoNode = ~std::uint32_t{0};

  ViolationKind kind{};
  std::uint32_t node_a = kNoNode;
  std::uint32_t node_b = kNoNode;  // kNoNode for single-node findings
};

// Proper colouring: no edge with equal endpoints' colours.
std::vector<Violation> check_colouring(const Graph& g,
                                       const std::vector<std::int64_t>& colours);

// Proper colouring of the square: no two nodes at distance <= 2 share a
// colour. Equivalent to check_colouring(square(g), colours).
std::vector<Violation> check_two_hop_colouring(
    const Graph& g, const std::vector<std::int64_t>& colours);

// Independent and maximal in g.
std::vector<Violation> check_mis(const Graph& g,
                                 const std::vector<bool>& membership);

// Independent and maximal in square(g).
std::vector<Violation> check_two_hop_mis(const Graph& g,
                                         const std::vector<bool>& membership);

// Reported degree equals the actual degree for every node.
std::vector<Violation> check_degrees(const Graph& g,
                                     const std::vector<std::int64_t>& degrees);

// All colours within {0..palette_max}.
std::vector<Violation> check_palette(const std::vector<std::int64_t>& colours,
                                     std::int64_t palette_max);

// --- diagnostics --------------------------------------------------------

// Upper bound on the probability that a node with beeping probability p and
// neighbourhood pressure q (sum of the neighbours' probabilities) is still
// undecided t phases later in the MIS dynamics. Decays by a factor 2^(1/36)
// per phase once past the initial plateau. Requires 0 < p <= 1/2, q >= 0.
double mis_survival_bound(double p, double q, std::uint64_t t);

// Potential-function piece used by colouring_measure: 4q below 1, then
// piecewise linear between breakpoints at powers of two, where each
// doubling adds 2.
double colouring_potential_f(double q);

// Per-node progress measure for the colouring dynamics:
// -log2(p) + f(q) + 10*d, where d is the number of undecided neighbours.
// Requires 0 < p <= 1/2, q >= 0.
double colouring_measure(double p, double q, std::uint64_t undecided_neighbours);

// --- trace analysis -----------------------------------------------------

struct PhasePotentials {
  std::vector<double> p;  // traced beeping probability per node
  std::vector<double> q;  // sum of undecided neighbours' probabilities
  std::vector<std::uint32_t> d;  // number of undecided neighbours
};

// Recomputes the neighbourhood pressure per phase from a traced run.
// Decided nodes contribute nothing. Requires the report to carry a trace.
std::vector<PhasePotentials> trace_potentials(const Graph& g,
                                              const RunReport& report);

}  // namespace beepsim
