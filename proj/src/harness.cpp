#include "beepsim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace beepsim {

AlgorithmKind parse_algorithm(const std::string& name) {
  if (name == "colouring") return AlgorithmKind::Colouring;
  if (name == "k-colouring") return AlgorithmKind::KColouring;
  if (name == "k-colouring-cycle") return AlgorithmKind::KColouringCycle;
  if (name == "two-hop-colouring") return AlgorithmKind::TwoHopColouring;
  if (name == "degree") return AlgorithmKind::Degree;
  if (name == "mis") return AlgorithmKind::Mis;
  if (name == "two-hop-mis") return AlgorithmKind::TwoHopMis;
  throw std::invalid_argument(
      "unknown algorithm '" + name +
      "' (expected colouring, k-colouring, k-colouring-cycle, "
      "two-hop-colouring, degree, mis or two-hop-mis)");
}

std::string algorithm_name(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::Colouring: return "colouring";
    case AlgorithmKind::KColouring: return "k-colouring";
    case AlgorithmKind::KColouringCycle: return "k-colouring-cycle";
    case AlgorithmKind::TwoHopColouring: return "two-hop-colouring";
    case AlgorithmKind::Degree: return "degree";
    case AlgorithmKind::Mis: return "mis";
    case AlgorithmKind::TwoHopMis: return "two-hop-mis";
  }
  return "?";
}

Algorithm make_algorithm(AlgorithmKind kind, std::uint32_t degree_bound) {
  switch (kind) {
    case AlgorithmKind::Colouring: return colouring_program();
    case AlgorithmKind::KColouring: return k_colouring_program(degree_bound);
    case AlgorithmKind::KColouringCycle:
      return k_colouring_cycle_variant_program(degree_bound);
    case AlgorithmKind::TwoHopColouring: return two_hop_colouring_program();
    case AlgorithmKind::Degree: return degree_program();
    case AlgorithmKind::Mis: return mis_program();
    case AlgorithmKind::TwoHopMis: return two_hop_mis_program();
  }
  throw std::invalid_argument("unknown algorithm kind");
}

Graph build_graph(const GraphConfig& config, std::uint64_t fallback_seed) {
  if (config.family == "complete") return make_complete(config.n);
  if (config.family == "ring") return make_ring(config.n);
  if (config.family == "path") return make_path(config.n);
  if (config.family == "star") return make_star(config.n);
  if (config.family == "empty") return make_empty(config.n);
  if (config.family == "er") {
    return make_erdos_renyi(config.n, config.edge_prob,
                            config.graph_seed.value_or(fallback_seed));
  }
  if (config.family == "wheel") return make_wheel(config.wheel);
  if (config.family == "file") return load_edge_list_file(config.path);
  throw std::invalid_argument(
      "unknown graph family '" + config.family +
      "' (expected complete, ring, path, star, empty, er, wheel or file)");
}

namespace {

bool is_colouring(AlgorithmKind kind) {
  return kind == AlgorithmKind::Colouring || kind == AlgorithmKind::KColouring ||
         kind == AlgorithmKind::KColouringCycle ||
         kind == AlgorithmKind::TwoHopColouring;
}

bool is_mis(AlgorithmKind kind) {
  return kind == AlgorithmKind::Mis || kind == AlgorithmKind::TwoHopMis;
}

std::uint64_t count_violations(AlgorithmKind kind, const Graph& g,
                               const Graph* squared,
                               const std::vector<std::int64_t>& outputs,
                               std::uint32_t degree_bound) {
  std::size_t total = 0;
  switch (kind) {
    case AlgorithmKind::Colouring:
      total = check_colouring(g, outputs).size();
      break;
    case AlgorithmKind::KColouring:
    case AlgorithmKind::KColouringCycle:
      total = check_colouring(g, outputs).size() +
              check_palette(outputs, degree_bound).size();
      break;
    case AlgorithmKind::TwoHopColouring:
      total = check_colouring(*squared, outputs).size();
      break;
    case AlgorithmKind::Degree:
      total = check_degrees(g, outputs).size();
      break;
    case AlgorithmKind::Mis:
    case AlgorithmKind::TwoHopMis: {
      std::vector<bool> membership(outputs.size());
      for (std::size_t v = 0; v < outputs.size(); ++v) {
        membership[v] = outputs[v] != 0;
      }
      total = check_mis(kind == AlgorithmKind::Mis ? g : *squared, membership)
                  .size();
      break;
    }
  }
  return total;
}

constexpr std::uint64_t kSequenceSeedTag = 0x7365717565ULL;

KPolicy resolve_policy(const TranspileConfig& t, std::size_t n,
                       std::size_t max_deg) {
  KPolicy policy;
  policy.kind = *t.policy;
  policy.epsilon = t.epsilon;
  policy.c = t.c;
  policy.node_count = n;
  policy.max_degree = std::max<std::uint64_t>(max_deg, 1);
  return policy;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result;
  result.graph = build_graph(config.graph, config.master_seed);
  const Graph& g = result.graph;
  const std::size_t delta = max_degree(g);

  const std::uint32_t degree_bound =
      config.degree_bound.value_or(static_cast<std::uint32_t>(delta));
  result.degree_bound_used = degree_bound;
  Algorithm algorithm = make_algorithm(config.algorithm, degree_bound);
  const ModelSpec native_model = algorithm.model;

  unsigned k = 0;
  std::uint64_t sequence_base = 0;
  if (config.transpile.enabled) {
    if (config.transpile.explicit_k) {
      k = *config.transpile.explicit_k;
      if (k == 0) throw std::invalid_argument("emulation needs k >= 1");
    } else if (config.transpile.policy) {
      k = choose_k(resolve_policy(config.transpile, g.node_count(), delta));
      if (k == 0) {
        throw std::invalid_argument(
            "k policy evaluated to 0 sub-phases; pick a tighter policy or an "
            "explicit k");
      }
    } else {
      throw std::invalid_argument("emulation needs a k policy or an explicit k");
    }
    sequence_base = config.transpile.sequence_seed.value_or(
        derive_seed(config.master_seed, kSequenceSeedTag));
    if (config.model && *config.model != ModelSpec::bl()) {
      throw std::invalid_argument("emulated runs execute under the plain model");
    }
    result.model_used = ModelSpec::bl();
  } else {
    result.model_used = config.model.value_or(native_model);
    if (!result.model_used.covers(native_model)) {
      throw std::invalid_argument(
          "model " + result.model_used.name() + " cannot run " +
          algorithm.name + " (needs " + native_model.name() + ")");
    }
  }
  result.emulation_k = k;

  std::optional<Graph> squared;
  if (config.algorithm == AlgorithmKind::TwoHopColouring ||
      config.algorithm == AlgorithmKind::TwoHopMis) {
    squared = square(g);
  }

  std::uint64_t max_slots = config.max_slots.value_or(
      default_max_slots(g.node_count(), delta) *
      (config.transpile.enabled ? 2ULL * k : 1ULL));

  result.rows.reserve(config.trials);
  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(config.master_seed, trial);

    const Algorithm* to_run = &algorithm;
    Algorithm transpiled;
    if (config.transpile.enabled) {
      TranspileSettings settings;
      settings.sub_phases = k;
      settings.sequence_seed = derive_seed(sequence_base, trial);
      settings.mode = config.transpile.forced_distinct
                          ? SequenceMode::ForcedDistinct
                          : SequenceMode::Random;
      transpiled = transpile(algorithm, settings, g.node_count());
      to_run = &transpiled;
    }

    RunReport report =
        run(g, result.model_used, to_run->factory, trial_seed,
            to_run->slots_per_phase, max_slots, config.trace);

    TrialRow row;
    row.trial = trial;
    row.seed = trial_seed;
    row.phases = report.phases_elapsed;
    row.slots = report.slots_elapsed;
    row.aborted = report.aborted;
    if (!report.aborted) {
      row.violations = count_violations(config.algorithm, g,
                                        squared ? &*squared : nullptr,
                                        report.outputs, degree_bound);
      if (is_colouring(config.algorithm) && !report.outputs.empty()) {
        row.max_colour =
            *std::max_element(report.outputs.begin(), report.outputs.end());
        std::set<std::int64_t> distinct(report.outputs.begin(),
                                        report.outputs.end());
        row.palette_size = distinct.size();
      }
      if (is_mis(config.algorithm)) {
        row.set_size = static_cast<std::uint64_t>(
            std::count(report.outputs.begin(), report.outputs.end(), kMisMember));
      }
      if (config.algorithm == AlgorithmKind::KColouringCycle) {
        const std::uint64_t sweep_len = degree_bound + 1;
        row.sweeps = (report.phases_elapsed + sweep_len - 1) / sweep_len;
      }
    }
    result.rows.push_back(row);
    if (config.trace) result.reports.push_back(std::move(report));
  }
  return result;
}

namespace {

DistributionSummary distribution(std::vector<std::uint64_t> values) {
  std::sort(values.begin(), values.end());
  auto rank = [&](double pct) {
    std::size_t r = static_cast<std::size_t>(
        std::ceil(pct / 100.0 * static_cast<double>(values.size())));
    if (r == 0) r = 1;
    return values[std::min(r, values.size()) - 1];
  };
  DistributionSummary d;
  d.min = values.front();
  d.max = values.back();
  double total = 0.0;
  for (std::uint64_t v : values) total += static_cast<double>(v);
  d.mean = total / static_cast<double>(values.size());
  d.median = rank(50.0);
  d.p90 = rank(90.0);
  d.p99 = rank(99.0);
  return d;
}

}  // namespace

Summary summarize(const std::vector<TrialRow>& rows,
                  std::optional<double> phase_bound) {
  if (rows.empty()) throw std::invalid_argument("no trials to summarize");
  Summary s;
  s.trials = rows.size();
  std::vector<std::uint64_t> phases, slots;
  phases.reserve(rows.size());
  slots.reserve(rows.size());
  std::uint64_t exceed = 0;
  for (const TrialRow& row : rows) {
    phases.push_back(row.phases);
    slots.push_back(row.slots);
    if (row.aborted) ++s.aborted;
    if (row.violations > 0) ++s.trials_with_violations;
    s.total_violations += row.violations;
    if (phase_bound && static_cast<double>(row.phases) > *phase_bound) ++exceed;
  }
  s.phases = distribution(std::move(phases));
  s.slots = distribution(std::move(slots));
  if (phase_bound) {
    s.phase_bound_exceedance =
        static_cast<double>(exceed) / static_cast<double>(rows.size());
  }
  return s;
}

std::string summary_to_text(const Summary& s) {
  std::ostringstream out;
  out << "trials " << s.trials << ", aborted " << s.aborted << ", violations "
      << s.total_violations << " (in " << s.trials_with_violations
      << " trials)\n";
  auto dist = [&](const char* label, const DistributionSummary& d) {
    out << label << ": min " << d.min << ", mean " << d.mean << ", median "
        << d.median << ", p90 " << d.p90 << ", p99 " << d.p99 << ", max "
        << d.max << "\n";
  };
  dist("phases", s.phases);
  dist("slots", s.slots);
  if (s.phase_bound_exceedance) {
    out << "phase bound exceeded in " << (*s.phase_bound_exceedance * 100.0)
        << "% of trials\n";
  }
  return out.str();
}

std::string rows_to_csv(const std::vector<TrialRow>& rows) {
  std::ostringstream out;
  out << "trial,seed,phases,slots,aborted,violations,max_colour,palette_size,"
         "set_size,sweeps\n";
  for (const TrialRow& r : rows) {
    out << r.trial << ',' << r.seed << ',' << r.phases << ',' << r.slots << ','
        << (r.aborted ? 1 : 0) << ',' << r.violations << ',';
    if (r.max_colour) out << *r.max_colour;
    out << ',';
    if (r.palette_size) out << *r.palette_size;
    out << ',';
    if (r.set_size) out << *r.set_size;
    out << ',';
    if (r.sweeps) out << *r.sweeps;
    out << '\n';
  }
  return out.str();
}

std::string rows_to_jsonl(const std::vector<TrialRow>& rows,
                          const std::vector<RunReport>& reports) {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TrialRow& r = rows[i];
    nlohmann::json j;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["phases"] = r.phases;
    j["slots"] = r.slots;
    j["aborted"] = r.aborted;
    j["violations"] = r.violations;
    if (r.max_colour) j["max_colour"] = *r.max_colour;
    if (r.palette_size) j["palette_size"] = *r.palette_size;
    if (r.set_size) j["set_size"] = *r.set_size;
    if (r.sweeps) j["sweeps"] = *r.sweeps;
    if (i < reports.size()) {
      const RunReport& report = reports[i];
      j["outputs"] = report.outputs;
      if (!report.trace.empty()) {
        nlohmann::json trace = nlohmann::json::array();
        for (const auto& phase_row : report.trace) {
          nlohmann::json phase = nlohmann::json::array();
          for (const TraceEntry& e : phase_row) {
            phase.push_back({{"p", e.p},
                             {"decided", e.decided},
                             {"action", e.action == Action::Beep ? "beep" : "listen"},
                             {"observation", observation_name(e.observation)}});
          }
          trace.push_back(std::move(phase));
        }
        j["trace"] = std::move(trace);
      }
    }
    out << j.dump() << '\n';
  }
  return out.str();
}

double missrate_experiment(unsigned sub_phases, std::uint64_t trials,
                           std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  const Graph pair = make_complete(2);
  const std::vector<bool> wishes{true, true};
  std::uint64_t misses = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto flags =
        detect_collision_round(pair, wishes, sub_phases, derive_seed(seed, t));
    if (!flags[0]) ++misses;
  }
  return static_cast<double>(misses) / static_cast<double>(trials);
}

std::uint64_t missrate_false_positives(unsigned sub_phases,
                                       std::uint64_t trials,
                                       std::uint64_t seed) {
  const Graph pair = make_complete(2);
  const std::vector<bool> wishes{true, false};
  std::uint64_t raised = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto flags =
        detect_collision_round(pair, wishes, sub_phases, derive_seed(seed, t));
    if (flags[0] || flags[1]) ++raised;
  }
  return raised;
}

WheelResult wheel_experiment(const WheelSpec& spec, unsigned steps,
                             std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  if (steps >= spec.spacing) {
    throw std::invalid_argument(
        "step count must stay below the spacing; beyond it the chord "
        "endpoints are no longer independent of the cycle wrap-around");
  }
  const auto spokes = wheel_spokes(spec);
  WheelResult result;
  result.trials = trials;
  result.steps = steps;
  result.expected = std::ldexp(1.0, -static_cast<int>(steps));
  std::vector<std::uint64_t> survived(spokes.size(), 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, t);
    for (std::size_t si = 0; si < spokes.size(); ++si) {
      // Same per-node coin streams the detection round would use: the
      // chord survives while its endpoints keep picking the same slot.
      RngStream a = RngStream::derive(trial_seed, spokes[si].first);
      RngStream b = RngStream::derive(trial_seed, spokes[si].second);
      bool agree = true;
      for (unsigned step = 0; step < steps && agree; ++step) {
        agree = a.next_bit() == b.next_bit();
      }
      if (agree) ++survived[si];
    }
  }
  result.spoke_survival.reserve(spokes.size());
  for (std::uint64_t count : survived) {
    result.spoke_survival.push_back(static_cast<double>(count) /
                                    static_cast<double>(trials));
  }
  return result;
}

TranspileCheckResult transpile_check(const ExperimentConfig& config) {
  if (!config.transpile.enabled) {
    throw std::invalid_argument("transpile check needs emulation enabled");
  }
  ExperimentResult experiment = run_experiment(config);
  TranspileCheckResult result;
  result.sub_phases = experiment.emulation_k;
  result.trials = experiment.rows.size();
  for (const TrialRow& row : experiment.rows) {
    if (row.violations > 0 || row.aborted) ++result.failing_trials;
  }
  result.failure_rate = result.trials == 0
                            ? 0.0
                            : static_cast<double>(result.failing_trials) /
                                  static_cast<double>(result.trials);
  result.analytic_bound = transpile_failure_bound(
      experiment.graph.node_count(), max_degree(experiment.graph),
      experiment.emulation_k);
  return result;
}

}  // namespace beepsim
