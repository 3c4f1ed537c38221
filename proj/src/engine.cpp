#include "beepsim/engine.hpp"

#include <cmath>
#include <stdexcept>

namespace beepsim {

std::string ModelSpec::name() const {
  std::string out = beeper_detects_collision() ? "Bcd" : "B";
  out += listener_detects_collision() ? "Lcd" : "L";
  return out;
}

ModelSpec ModelSpec::parse(const std::string& text) {
  if (text == "BL") return bl();
  if (text == "BcdL") return bcd_l();
  if (text == "BLcd") return b_lcd();
  if (text == "BcdLcd") return bcd_lcd();
  throw std::invalid_argument("unknown model '" + text +
                              "' (expected BL, BcdL, BLcd or BcdLcd)");
}

const char* observation_name(Observation o) {
  switch (o) {
    case Observation::Silence: return "silence";
    case Observation::HeardBeep: return "heard-beep";
    case Observation::HeardOne: return "heard-one";
    case Observation::HeardTwoPlus: return "heard-two-plus";
    case Observation::BeepedBlind: return "beeped";
    case Observation::BeepedAlone: return "beeped-alone";
    case Observation::BeepedWithCollision: return "beeped-with-collision";
  }
  return "?";
}

bool RunReport::all_decided() const {
  for (bool d : decided) {
    if (!d) return false;
  }
  return true;
}

std::uint64_t default_max_slots(std::size_t node_count, std::size_t max_degree) {
  if (node_count == 0) return 1000;
  const double n = static_cast<double>(node_count);
  const double budget = 76.0 * std::log2(n) +
                        20.0 * static_cast<double>(max_degree) +
                        180.0 * std::log(n) + 100.0;
  return static_cast<std::uint64_t>(10.0 * budget);
}

RunReport run(const Graph& g, ModelSpec model, const ProgramFactory& factory,
              std::uint64_t master_seed, std::uint32_t slots_per_phase,
              std::uint64_t max_slots, bool record_trace) {
  if (slots_per_phase == 0) {
    throw std::invalid_argument("slots_per_phase must be >= 1");
  }
  const std::size_t n = g.node_count();

  std::vector<std::unique_ptr<NodeProgram>> programs;
  programs.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto p = factory(v, derive_node_stream(master_seed, v));
    if (!p) throw std::invalid_argument("program factory returned null");
    programs.push_back(std::move(p));
  }

  RunReport report;
  report.outputs.assign(n, 0);
  report.decided.assign(n, false);
  report.decision_slot.assign(n, RunReport::kNoDecision);

  // A program may already be decided before its first slot.
  for (std::size_t v = 0; v < n; ++v) {
    if (auto value = programs[v]->decision()) {
      report.decided[v] = true;
      report.outputs[v] = *value;
      report.decision_slot[v] = 0;
    }
  }

  std::vector<Action> actions(n, Action::Listen);
  std::vector<std::uint32_t> beep_counts(n, 0);
  std::vector<std::uint32_t> beepers;
  beepers.reserve(n);
  std::size_t undecided = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!report.decided[v]) ++undecided;
  }

  auto globally_done = [&]() {
    if (undecided != 0) return false;
    for (const auto& p : programs) {
      if (p->wants_termination_participation()) return false;
    }
    return true;
  };

  for (std::uint64_t phase = 0;; ++phase) {
    if (globally_done()) break;
    if (report.slots_elapsed + slots_per_phase > max_slots) {
      report.aborted = true;
      break;
    }

    std::vector<TraceEntry>* trace_row = nullptr;
    if (record_trace) {
      report.trace.emplace_back(n);
      trace_row = &report.trace.back();
      for (std::size_t v = 0; v < n; ++v) {
        auto& entry = (*trace_row)[v];
        entry.decided = report.decided[v];
        entry.p = programs[v]->contention_probability().value_or(0.0);
      }
    }

    for (std::uint32_t slot = 0; slot < slots_per_phase; ++slot) {
      beepers.clear();
      for (std::size_t v = 0; v < n; ++v) {
        actions[v] = programs[v]->act(phase, slot);
        if (actions[v] == Action::Beep) beepers.push_back(static_cast<std::uint32_t>(v));
      }
      // Count beeping neighbours; a node's own beep is not audible to it.
      std::fill(beep_counts.begin(), beep_counts.end(), 0);
      for (std::uint32_t b : beepers) {
        for (std::uint32_t u : g.neighbours(b)) ++beep_counts[u];
      }
      for (std::size_t v = 0; v < n; ++v) {
        const Observation obs = observe(actions[v], beep_counts[v], model);
        programs[v]->absorb(obs);
        if (trace_row && slot == 0) {
          (*trace_row)[v].action = actions[v];
          (*trace_row)[v].observation = obs;
        }
        if (!report.decided[v]) {
          if (auto value = programs[v]->decision()) {
            report.decided[v] = true;
            report.outputs[v] = *value;
            report.decision_slot[v] = report.slots_elapsed;
            --undecided;
          }
        }
      }
      ++report.slots_elapsed;
    }
    ++report.phases_elapsed;
  }

  return report;
}

}  // namespace beepsim
