#include "beepsim/emulation.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace beepsim {

KPolicy KPolicy::per_node_per_step(double epsilon) {
  return {Kind::PerNodePerStep, epsilon, 0.0, 0, 0};
}
KPolicy KPolicy::all_nodes_per_step(std::uint64_t node_count, double epsilon) {
  return {Kind::AllNodesPerStep, epsilon, 0.0, node_count, 0};
}
KPolicy KPolicy::whp_per_step(std::uint64_t node_count, double c) {
  return {Kind::WhpPerStep, 0.0, c, node_count, 0};
}
KPolicy KPolicy::per_node_whole_run(std::uint64_t max_degree, double epsilon) {
  return {Kind::PerNodeWholeRun, epsilon, 0.0, 0, max_degree};
}
KPolicy KPolicy::all_nodes_whole_run(std::uint64_t node_count,
                                     std::uint64_t max_degree, double epsilon) {
  return {Kind::AllNodesWholeRun, epsilon, 0.0, node_count, max_degree};
}
KPolicy KPolicy::whp_whole_run(std::uint64_t node_count,
                               std::uint64_t max_degree, double c) {
  return {Kind::WhpWholeRun, 0.0, c, node_count, max_degree};
}

namespace {

double checked_epsilon(const KPolicy& p) {
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must be in (0, 1)");
  }
  return p.epsilon;
}

double checked_c(const KPolicy& p) {
  if (!(p.c > 2.0)) throw std::invalid_argument("c must exceed 2");
  return p.c;
}

double checked_n(const KPolicy& p) {
  if (p.node_count == 0) throw std::invalid_argument("node count must be >= 1");
  return static_cast<double>(p.node_count);
}

double checked_degree(const KPolicy& p) {
  if (p.max_degree == 0) throw std::invalid_argument("max degree must be >= 1");
  return static_cast<double>(p.max_degree);
}

}  // namespace

unsigned choose_k(const KPolicy& policy) {
  double k = 0.0;
  switch (policy.kind) {
    case KPolicy::Kind::PerNodePerStep:
      k = std::ceil(std::log2(1.0 / checked_epsilon(policy)));
      break;
    case KPolicy::Kind::AllNodesPerStep:
      k = std::ceil(std::log2(checked_n(policy) / checked_epsilon(policy)));
      break;
    case KPolicy::Kind::WhpPerStep:
      k = std::ceil(checked_c(policy) * std::log2(checked_n(policy)));
      break;
    case KPolicy::Kind::PerNodeWholeRun:
      k = std::ceil(std::log2(checked_degree(policy) / checked_epsilon(policy)));
      break;
    case KPolicy::Kind::AllNodesWholeRun:
      k = std::floor(std::log2(checked_n(policy) * checked_degree(policy) /
                               checked_epsilon(policy)));
      break;
    case KPolicy::Kind::WhpWholeRun:
      k = std::floor(checked_c(policy) * std::log2(checked_n(policy)) +
                     std::log2(checked_degree(policy)));
      break;
  }
  if (k < 0.0) k = 0.0;
  return static_cast<unsigned>(k);
}

std::vector<bool> detect_collision_round(const Graph& g,
                                         const std::vector<bool>& wishes,
                                         unsigned sub_phases,
                                         std::uint64_t seed) {
  const std::size_t n = g.node_count();
  if (wishes.size() != n) {
    throw std::invalid_argument("wish vector size does not match graph");
  }
  if (sub_phases == 0) throw std::invalid_argument("need at least one sub-phase");

  std::vector<RngStream> streams;
  streams.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    streams.push_back(RngStream::derive(seed, v));
  }

  std::vector<bool> flags(n, false);
  std::vector<std::uint8_t> slot_of(n, 0);
  std::vector<std::uint32_t> heard_first(n), heard_second(n);
  for (unsigned i = 0; i < sub_phases; ++i) {
    for (std::size_t v = 0; v < n; ++v) {
      if (wishes[v]) slot_of[v] = streams[v].next_bit() ? 0 : 1;
    }
    std::fill(heard_first.begin(), heard_first.end(), 0);
    std::fill(heard_second.begin(), heard_second.end(), 0);
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!wishes[v]) continue;
      auto& heard = slot_of[v] == 0 ? heard_first : heard_second;
      for (std::uint32_t u : g.neighbours(v)) ++heard[u];
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (wishes[v]) {
        // hears only the slot it is not occupying
        const auto& other = slot_of[v] == 0 ? heard_second : heard_first;
        if (other[v] > 0) flags[v] = true;
      } else if (heard_first[v] > 0 && heard_second[v] > 0) {
        flags[v] = true;
      }
    }
  }
  return flags;
}

bool emulate_bcd_verdict(const BitSequence& s, const std::vector<bool>& heard) {
  if (heard.size() != 2 * s.size()) {
    throw std::invalid_argument("heard flags must cover 2k slots");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (heard[2 * i + (1 - beep_half(s, i))]) return true;
  }
  return false;
}

LcdVerdict emulate_lcd_verdict(const std::vector<bool>& heard) {
  if (heard.size() % 2 != 0 || heard.empty()) {
    throw std::invalid_argument("heard flags must cover 2k slots");
  }
  LcdVerdict verdict;
  for (std::size_t i = 0; i < heard.size() / 2; ++i) {
    const bool a = heard[2 * i], b = heard[2 * i + 1];
    if (a || b) verdict.heard_any = true;
    if (a && b) verdict.collision = true;
  }
  return verdict;
}

std::vector<BitSequence> draw_bit_sequences(unsigned sub_phases,
                                            std::size_t node_count,
                                            std::uint64_t sequence_seed,
                                            SequenceMode mode) {
  if (sub_phases == 0) throw std::invalid_argument("need at least one sub-phase");
  if (mode == SequenceMode::ForcedDistinct && sub_phases < 64 &&
      (std::uint64_t{1} << sub_phases) < node_count) {
    throw std::invalid_argument(
        "cannot force distinct sequences: 2^k is below the node count");
  }
  std::vector<BitSequence> sequences(node_count);
  std::vector<RngStream> streams;
  streams.reserve(node_count);
  for (std::size_t v = 0; v < node_count; ++v) {
    streams.push_back(RngStream::derive(sequence_seed, v));
  }
  auto draw = [&](std::size_t v) {
    BitSequence s(sub_phases);
    for (unsigned i = 0; i < sub_phases; ++i) s[i] = streams[v].next_bit();
    return s;
  };
  for (std::size_t v = 0; v < node_count; ++v) {
    sequences[v] = draw(v);
    if (mode == SequenceMode::ForcedDistinct) {
      for (std::size_t u = 0; u < v;) {
        if (sequences[u] == sequences[v]) {
          sequences[v] = draw(v);  // redraw from the node's own stream
          u = 0;
        } else {
          ++u;
        }
      }
    }
  }
  return sequences;
}

namespace {

// Runs the wrapped program's slots stretched into 2k BL slots each,
// collecting what was heard and synthesizing the strong-model observation
// at the end of each original slot.
class TranspiledProgram final : public NodeProgram {
 public:
  TranspiledProgram(std::unique_ptr<NodeProgram> inner, ModelSpec inner_model,
                    BitSequence sequence)
      : inner_(std::move(inner)),
        inner_model_(inner_model),
        sequence_(std::move(sequence)),
        heard_(2 * sequence_.size(), false) {}

  Action act(std::uint64_t phase, std::uint32_t slot) override {
    const auto k = static_cast<std::uint32_t>(sequence_.size());
    const std::uint32_t original_slot = slot / (2 * k);
    cursor_ = slot % (2 * k);
    if (cursor_ == 0) {
      pending_ = inner_->act(phase, original_slot);
      std::fill(heard_.begin(), heard_.end(), false);
    }
    if (pending_ == Action::Beep &&
        cursor_ % 2 == beep_half(sequence_, cursor_ / 2)) {
      return Action::Beep;
    }
    return Action::Listen;
  }

  void absorb(Observation obs) override {
    heard_[cursor_] = observation_heard_activity(obs);
    if (cursor_ + 1 < heard_.size()) return;
    inner_->absorb(synthesize());
  }

  std::optional<std::int64_t> decision() const override {
    return inner_->decision();
  }
  bool wants_termination_participation() const override {
    return inner_->wants_termination_participation();
  }
  std::optional<double> contention_probability() const override {
    return inner_->contention_probability();
  }

 private:
  Observation synthesize() const {
    if (pending_ == Action::Beep) {
      const bool collision = emulate_bcd_verdict(sequence_, heard_);
      if (!inner_model_.beeper_detects_collision()) return Observation::BeepedBlind;
      return collision ? Observation::BeepedWithCollision
                       : Observation::BeepedAlone;
    }
    const LcdVerdict verdict = emulate_lcd_verdict(heard_);
    if (!verdict.heard_any) return Observation::Silence;
    if (!inner_model_.listener_detects_collision()) return Observation::HeardBeep;
    return verdict.collision ? Observation::HeardTwoPlus : Observation::HeardOne;
  }

  std::unique_ptr<NodeProgram> inner_;
  ModelSpec inner_model_;
  BitSequence sequence_;
  std::vector<bool> heard_;
  Action pending_ = Action::Listen;
  std::uint32_t cursor_ = 0;
};

}  // namespace

Algorithm transpile(const Algorithm& inner, const TranspileSettings& settings,
                    std::size_t node_count) {
  if (settings.sub_phases == 0) {
    throw std::invalid_argument("need at least one sub-phase");
  }
  if (inner.model == ModelSpec::bl()) {
    throw std::invalid_argument(
        "transpile expects a program written for a collision-detecting model");
  }
  auto sequences = std::make_shared<const std::vector<BitSequence>>(
      draw_bit_sequences(settings.sub_phases, node_count,
                         settings.sequence_seed, settings.mode));
  const ModelSpec inner_model = inner.model;
  const ProgramFactory inner_factory = inner.factory;
  Algorithm out;
  out.name = inner.name + "@bl";
  out.model = ModelSpec::bl();
  out.slots_per_phase = inner.slots_per_phase * 2 * settings.sub_phases;
  out.factory = [sequences, inner_model, inner_factory](
                    std::size_t node, RngStream rng) -> std::unique_ptr<NodeProgram> {
    if (node >= sequences->size()) {
      throw std::invalid_argument("transpiled run has more nodes than sequences");
    }
    return std::make_unique<TranspiledProgram>(inner_factory(node, rng),
                                               inner_model, (*sequences)[node]);
  };
  return out;
}

double transpile_failure_bound(std::size_t node_count, std::size_t max_degree,
                               unsigned sub_phases) {
  return static_cast<double>(node_count) * static_cast<double>(max_degree) /
         std::ldexp(1.0, static_cast<int>(sub_phases) + 1);
}

}  // namespace beepsim
