#include "beepsim/verify.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace beepsim {

const char* violation_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::EdgeConflict: return "edge-conflict";
    case ViolationKind::NotIndependent: return "not-independent";
    case ViolationKind::NotMaximal: return "not-maximal";
    case ViolationKind::WrongDegree: return "wrong-degree";
    case ViolationKind::OutOfPalette: return "out-of-palette";
  }
  return "?";
}

namespace {

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(want) + " entries, got " +
                                std::to_string(got));
  }
}

}  // namespace

std::vector<Violation> check_colouring(const Graph& g,
                                       const std::vector<std::int64_t>& colours) {
  require_size(colours.size(), g.node_count(), "colours");
  std::vector<Violation> out;
  for (const auto& [u, v] : g.edges()) {
    if (colours[u] == colours[v]) {
      out.push_back({ViolationKind::EdgeConflict, u, v});
    }
  }
  return out;
}

std::vector<Violation> check_two_hop_colouring(
    const Graph& g, const std::vector<std::int64_t>& colours) {
  return check_colouring(square(g), colours);
}

std::vector<Violation> check_mis(const Graph& g,
                                 const std::vector<bool>& membership) {
  require_size(membership.size(), g.node_count(), "membership");
  std::vector<Violation> out;
  for (const auto& [u, v] : g.edges()) {
    if (membership[u] && membership[v]) {
      out.push_back({ViolationKind::NotIndependent, u, v});
    }
  }
  for (std::uint32_t v = 0; v < g.node_count(); ++v) {
    if (membership[v]) continue;
    bool covered = false;
    for (std::uint32_t u : g.neighbours(v)) {
      if (membership[u]) {
        covered = true;
        break;
      }
    }
    if (!covered) out.push_back({ViolationKind::NotMaximal, v});
  }
  return out;
}

std::vector<Violation> check_two_hop_mis(const Graph& g,
                                         const std::vector<bool>& membership) {
  return check_mis(square(g), membership);
}

std::vector<Violation> check_degrees(const Graph& g,
                                     const std::vector<std::int64_t>& degrees) {
  require_size(degrees.size(), g.node_count(), "degrees");
  std::vector<Violation> out;
  for (std::uint32_t v = 0; v < g.node_count(); ++v) {
    if (degrees[v] != static_cast<std::int64_t>(g.degree(v))) {
      out.push_back({ViolationKind::WrongDegree, v});
    }
  }
  return out;
}

std::vector<Violation> check_palette(const std::vector<std::int64_t>& colours,
                                     std::int64_t palette_max) {
  std::vector<Violation> out;
  for (std::uint32_t v = 0; v < colours.size(); ++v) {
    if (colours[v] < 0 || colours[v] > palette_max) {
      out.push_back({ViolationKind::OutOfPalette, v});
    }
  }
  return out;
}

// --- diagnostics --------------------------------------------------------

namespace {

void require_probability(double p) {
  if (!(p > 0.0 && p <= 0.5)) {
    throw std::invalid_argument("p must be in (0, 1/2]");
  }
}

}  // namespace

double mis_survival_bound(double p, double q, std::uint64_t t) {
  require_probability(p);
  if (!(q >= 0.0)) throw std::invalid_argument("q must be >= 0");
  // Plateau length grows with log of the initial pressure, shrinks with
  // log of the initial probability; decay rate is 2^(1/36) per phase.
  const double l = q > 0.0 ? std::max(std::log2(5.0 * q), 0.0) : 0.0;
  const double t0 = 3.0 * l - 2.0 * std::log2(p);
  return std::pow(2.0, (t0 - static_cast<double>(t)) / 36.0);
}

double colouring_potential_f(double q) {
  if (!(q >= 0.0)) throw std::invalid_argument("q must be >= 0");
  if (q <= 1.0) return 4.0 * q;
  // Linear between f(2^i) = 2i + 4 and f(2^(i+1)) = 2i + 6.
  const int i = std::ilogb(q);
  return 2.0 * i + 2.0 + 2.0 * std::ldexp(q, -i);
}

double colouring_measure(double p, double q, std::uint64_t undecided_neighbours) {
  require_probability(p);
  return -std::log2(p) + colouring_potential_f(q) +
         10.0 * static_cast<double>(undecided_neighbours);
}

std::vector<PhasePotentials> trace_potentials(const Graph& g,
                                              const RunReport& report) {
  if (report.trace.empty() && report.phases_elapsed > 0) {
    throw std::invalid_argument("run report carries no trace");
  }
  std::vector<PhasePotentials> out;
  out.reserve(report.trace.size());
  for (const auto& row : report.trace) {
    require_size(row.size(), g.node_count(), "trace row");
    PhasePotentials pot;
    pot.p.resize(g.node_count());
    pot.q.assign(g.node_count(), 0.0);
    pot.d.assign(g.node_count(), 0);
    for (std::uint32_t v = 0; v < g.node_count(); ++v) {
      pot.p[v] = row[v].p;
    }
    for (std::uint32_t v = 0; v < g.node_count(); ++v) {
      for (std::uint32_t u : g.neighbours(v)) {
        if (!row[u].decided) {
          pot.q[v] += row[u].p;
          ++pot.d[v];
        }
      }
    }
    out.push_back(std::move(pot));
  }
  return out;
}

}  // namespace beepsim
