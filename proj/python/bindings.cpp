#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "beepsim/algorithms.hpp"
#include "beepsim/emulation.hpp"
#include "beepsim/engine.hpp"
#include "beepsim/graph.hpp"
#include "beepsim/harness.hpp"
#include "beepsim/verify.hpp"

namespace py = pybind11;
using namespace beepsim;

namespace {

WheelParity parse_parity(const std::string& text) {
  if (text == "odd") return WheelParity::Odd;
  if (text == "even") return WheelParity::Even;
  throw std::invalid_argument("parity must be 'odd' or 'even'");
}

KPolicy::Kind parse_policy(const std::string& text) {
  if (text == "per-node-step") return KPolicy::Kind::PerNodePerStep;
  if (text == "all-nodes-step") return KPolicy::Kind::AllNodesPerStep;
  if (text == "whp-step") return KPolicy::Kind::WhpPerStep;
  if (text == "per-node-run") return KPolicy::Kind::PerNodeWholeRun;
  if (text == "all-nodes-run") return KPolicy::Kind::AllNodesWholeRun;
  if (text == "whp-run") return KPolicy::Kind::WhpWholeRun;
  throw std::invalid_argument("unknown k policy: " + text);
}

py::list violations_to_list(const std::vector<Violation>& violations) {
  py::list out;
  for (const auto& v : violations) {
    py::object b = v.node_b == Violation::kNoNode
                       ? py::object(py::none())
                       : py::object(py::int_(v.node_b));
    out.append(py::make_tuple(std::string(violation_name(v.kind)),
                              py::int_(v.node_a), b));
  }
  return out;
}

std::vector<bool> membership_from_outputs(const std::vector<std::int64_t>& outputs) {
  std::vector<bool> member(outputs.size());
  for (std::size_t v = 0; v < outputs.size(); ++v)
    member[v] = outputs[v] == kMisMember;
  return member;
}

RunReport simulate(const Graph& g, const std::string& algorithm,
                   std::uint64_t seed, std::optional<std::uint32_t> degree_bound,
                   std::optional<std::string> model,
                   std::optional<std::uint64_t> max_slots, bool trace,
                   unsigned emulate_k, std::optional<std::uint64_t> sequence_seed,
                   bool forced_distinct) {
  Algorithm alg = make_algorithm(parse_algorithm(algorithm),
                                 degree_bound.value_or(static_cast<std::uint32_t>(
                                     max_degree(g))));
  ModelSpec run_model = alg.model;
  if (emulate_k > 0) {
    TranspileSettings settings;
    settings.sub_phases = emulate_k;
    settings.sequence_seed = sequence_seed.value_or(derive_seed(seed, 0x7365717565ULL));
    settings.mode = forced_distinct ? SequenceMode::ForcedDistinct
                                    : SequenceMode::Random;
    alg = transpile(alg, settings, g.node_count());
    run_model = ModelSpec::bl();
  }
  if (model) {
    ModelSpec requested = ModelSpec::parse(*model);
    if (!requested.covers(run_model))
      throw std::invalid_argument("model " + requested.name() +
                                  " lacks capabilities needed by " + alg.name);
    run_model = requested;
  }
  std::uint64_t budget = max_slots.value_or(
      default_max_slots(g.node_count(), max_degree(g)) *
      (emulate_k > 0 ? 2ull * emulate_k : 1ull));
  return run(g, run_model, alg.factory, seed, alg.slots_per_phase, budget, trace);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "slot-synchronous simulator for anonymous beeping networks";

  py::class_<Graph>(m, "Graph")
      .def(py::init<>())
      .def(py::init<std::size_t, const std::vector<Graph::Edge>&>(),
           py::arg("node_count"), py::arg("edges"))
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("degree", &Graph::degree, py::arg("v"))
      .def("neighbours",
           [](const Graph& g, std::size_t v) {
             auto span = g.neighbours(v);
             return std::vector<std::uint32_t>(span.begin(), span.end());
           },
           py::arg("v"))
      .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
      .def("edges", &Graph::edges)
      .def("square", [](const Graph& g) { return square(g); })
      .def("max_degree", [](const Graph& g) { return max_degree(g); })
      .def("save", [](const Graph& g) { return save_edge_list(g); })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.node_count()) +
               ", m=" + std::to_string(g.edge_count()) + ")";
      });

  m.def("complete_graph", &make_complete, py::arg("n"));
  m.def("ring_graph", &make_ring, py::arg("n"));
  m.def("path_graph", &make_path, py::arg("n"));
  m.def("star_graph", &make_star, py::arg("leaves"));
  m.def("empty_graph", &make_empty, py::arg("n"));
  m.def("erdos_renyi_graph", &make_erdos_renyi, py::arg("n"), py::arg("p"),
        py::arg("seed"));
  m.def(
      "wheel_graph",
      [](std::size_t spokes, std::size_t spacing, const std::string& parity) {
        return make_wheel({spokes, spacing, parse_parity(parity)});
      },
      py::arg("spokes"), py::arg("spacing"), py::arg("parity") = "odd");
  m.def("load_graph", &load_edge_list_file, py::arg("path"));
  m.def("parse_graph", &load_edge_list, py::arg("text"));

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("phases", &RunReport::phases_elapsed)
      .def_readonly("slots", &RunReport::slots_elapsed)
      .def_readonly("aborted", &RunReport::aborted)
      .def_readonly("outputs", &RunReport::outputs)
      .def_readonly("decided", &RunReport::decided)
      .def_readonly("decision_slot", &RunReport::decision_slot)
      .def("all_decided", &RunReport::all_decided)
      .def("__repr__", [](const RunReport& r) {
        return "RunReport(phases=" + std::to_string(r.phases_elapsed) +
               ", slots=" + std::to_string(r.slots_elapsed) +
               (r.aborted ? ", aborted=True)" : ")");
      });

  m.def("simulate", &simulate, py::arg("graph"), py::arg("algorithm"),
        py::arg("seed") = 0, py::arg("degree_bound") = py::none(),
        py::arg("model") = py::none(), py::arg("max_slots") = py::none(),
        py::arg("trace") = false, py::arg("emulate_k") = 0,
        py::arg("sequence_seed") = py::none(),
        py::arg("forced_distinct") = false,
        "Run one execution; returns a RunReport. emulate_k > 0 transpiles "
        "the algorithm down to the plain beep/listen model first.");

  m.def("algorithms", [] {
    return std::vector<std::string>{"colouring",     "k-colouring",
                                    "k-colouring-cycle", "two-hop-colouring",
                                    "degree",        "mis",
                                    "two-hop-mis"};
  });

  m.def("default_max_slots", &default_max_slots, py::arg("node_count"),
        py::arg("max_degree"));

  m.def(
      "check_colouring",
      [](const Graph& g, const std::vector<std::int64_t>& colours) {
        return violations_to_list(check_colouring(g, colours));
      },
      py::arg("graph"), py::arg("colours"));
  m.def(
      "check_two_hop_colouring",
      [](const Graph& g, const std::vector<std::int64_t>& colours) {
        return violations_to_list(check_two_hop_colouring(g, colours));
      },
      py::arg("graph"), py::arg("colours"));
  m.def(
      "check_mis",
      [](const Graph& g, const std::vector<std::int64_t>& outputs) {
        return violations_to_list(check_mis(g, membership_from_outputs(outputs)));
      },
      py::arg("graph"), py::arg("outputs"));
  m.def(
      "check_two_hop_mis",
      [](const Graph& g, const std::vector<std::int64_t>& outputs) {
        return violations_to_list(
            check_two_hop_mis(g, membership_from_outputs(outputs)));
      },
      py::arg("graph"), py::arg("outputs"));
  m.def(
      "check_degrees",
      [](const Graph& g, const std::vector<std::int64_t>& degrees) {
        return violations_to_list(check_degrees(g, degrees));
      },
      py::arg("graph"), py::arg("degrees"));
  m.def(
      "check_palette",
      [](const std::vector<std::int64_t>& colours, std::int64_t palette_max) {
        return violations_to_list(check_palette(colours, palette_max));
      },
      py::arg("colours"), py::arg("palette_max"));

  m.def(
      "choose_k",
      [](const std::string& policy, double epsilon, double c, std::uint64_t n,
         std::uint64_t max_degree) {
        KPolicy p;
        p.kind = parse_policy(policy);
        p.epsilon = epsilon;
        p.c = c;
        p.node_count = n;
        p.max_degree = max_degree;
        return choose_k(p);
      },
      py::arg("policy"), py::arg("epsilon") = 0.0, py::arg("c") = 0.0,
      py::arg("n") = 0, py::arg("max_degree") = 0,
      "Sub-phase count for emulated collision detection. Policies: "
      "per-node-step, all-nodes-step, whp-step, per-node-run, all-nodes-run, "
      "whp-run.");

  m.def("transpile_failure_bound", &transpile_failure_bound,
        py::arg("node_count"), py::arg("max_degree"), py::arg("sub_phases"));

  m.def("mis_survival_bound", &mis_survival_bound, py::arg("p"), py::arg("q"),
        py::arg("t"));
  m.def("colouring_potential_f", &colouring_potential_f, py::arg("q"));
  m.def("colouring_measure", &colouring_measure, py::arg("p"), py::arg("q"),
        py::arg("undecided_neighbours"));

  m.def("missrate", &missrate_experiment, py::arg("sub_phases"),
        py::arg("trials"), py::arg("seed") = 0,
        "Empirical miss rate of emulated collision detection between two "
        "adjacent beepers; exact value is 2^-sub_phases.");
  m.def("missrate_false_positives", &missrate_false_positives,
        py::arg("sub_phases"), py::arg("trials"), py::arg("seed") = 0);

  m.def(
      "wheel_survival",
      [](std::size_t spokes, std::size_t spacing, unsigned steps,
         std::uint64_t trials, std::uint64_t seed, const std::string& parity) {
        WheelResult r = wheel_experiment({spokes, spacing, parse_parity(parity)},
                                         steps, trials, seed);
        py::dict out;
        out["trials"] = r.trials;
        out["steps"] = r.steps;
        out["expected"] = r.expected;
        out["spoke_survival"] = r.spoke_survival;
        return out;
      },
      py::arg("spokes"), py::arg("spacing"), py::arg("steps"),
      py::arg("trials"), py::arg("seed") = 0, py::arg("parity") = "odd");

  m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("stream"));
}
