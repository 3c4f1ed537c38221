#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "beepsim/graph.hpp"
#include "beepsim/rng.hpp"

namespace beepsim {

// --- model -------------------------------------------------------------
//
// A beeping node either beeps or listens in each slot. The model controls
// how much a node learns: a collision-detecting beeper can tell whether it
// beeped alone, a collision-detecting listener can tell one beeping
// neighbour from several. A node never hears its own beep.

enum class BeeperCap : std::uint8_t { B, Bcd };
enum class ListenerCap : std::uint8_t { L, Lcd };

struct ModelSpec {
  BeeperCap beeper = BeeperCap::B;
  ListenerCap listener = ListenerCap::L;

  bool beeper_detects_collision() const { return beeper == BeeperCap::Bcd; }
  bool listener_detects_collision() const { return listener == ListenerCap::Lcd; }

  // True when this model offers every capability `required` offers, i.e. a
  // program written for `required` can run here unchanged.
  bool covers(ModelSpec required) const {
    return (beeper_detects_collision() || !required.beeper_detects_collision()) &&
           (listener_detects_collision() || !required.listener_detects_collision());
  }

  std::string name() const;
  static ModelSpec parse(const std::string& text);

  static constexpr ModelSpec bl() { return {BeeperCap::B, ListenerCap::L}; }
  static constexpr ModelSpec bcd_l() { return {BeeperCap::Bcd, ListenerCap::L}; }
  static constexpr ModelSpec b_lcd() { return {BeeperCap::B, ListenerCap::Lcd}; }
  static constexpr ModelSpec bcd_lcd() { return {BeeperCap::Bcd, ListenerCap::Lcd}; }

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

enum class Action : std::uint8_t { Beep, Listen };

enum class Observation : std::uint8_t {
  // listener outcomes
  Silence,
  HeardBeep,     // >= 1 beeping neighbour, no listener collision detection
  HeardOne,      // exactly one beeping neighbour
  HeardTwoPlus,  // at least two beeping neighbours
  // beeper outcomes
  BeepedBlind,          // beeped, no beeper collision detection
  BeepedAlone,          // beeped and no neighbour beeped
  BeepedWithCollision,  // beeped and some neighbour beeped too
};

const char* observation_name(Observation o);

// True for any observation that proves at least one neighbour beeped.
constexpr bool observation_heard_activity(Observation o) {
  return o == Observation::HeardBeep || o == Observation::HeardOne ||
         o == Observation::HeardTwoPlus || o == Observation::BeepedWithCollision;
}

constexpr bool is_beeper_observation(Observation o) {
  return o == Observation::BeepedBlind || o == Observation::BeepedAlone ||
         o == Observation::BeepedWithCollision;
}

// Slot semantics: what a node perceives given its action, the number of its
// neighbours beeping in the same slot, and the model.
constexpr Observation observe(Action action, std::size_t beeping_neighbours,
                              ModelSpec model) {
  if (action == Action::Beep) {
    if (!model.beeper_detects_collision()) return Observation::BeepedBlind;
    return beeping_neighbours == 0 ? Observation::BeepedAlone
                                   : Observation::BeepedWithCollision;
  }
  if (beeping_neighbours == 0) return Observation::Silence;
  if (!model.listener_detects_collision()) return Observation::HeardBeep;
  return beeping_neighbours == 1 ? Observation::HeardOne
                                 : Observation::HeardTwoPlus;
}

// --- node programs ------------------------------------------------------

// One anonymous node's local algorithm. The engine drives every node in
// lock-step: for each slot it first collects all actions, then delivers all
// observations. Programs own their private random stream; their only input
// from the outside world is the observation sequence.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;

  // Choose the action for this slot. `phase` counts from 0; `slot` is the
  // position within the phase, 0 <= slot < slots_per_phase.
  virtual Action act(std::uint64_t phase, std::uint32_t slot) = 0;

  // Deliver the observation for the slot just acted in.
  virtual void absorb(Observation obs) = 0;

  // Final output once available. Must never change after it is first set.
  virtual std::optional<std::int64_t> decision() const = 0;

  // True while the node, although decided, still has to stay active for its
  // neighbours (service beeps). The run only ends when every node has
  // decided and no node asks to keep participating.
  virtual bool wants_termination_participation() const { return false; }

  // Current beeping probability, for traces and diagnostics only.
  virtual std::optional<double> contention_probability() const {
    return std::nullopt;
  }
};

// Builds the program for one node. The node index is engine bookkeeping
// (trace rows, pre-drawn emulation sequences); programs must behave
// identically up to their random stream, or the network is no longer
// anonymous.
using ProgramFactory =
    std::function<std::unique_ptr<NodeProgram>(std::size_t node_index,
                                               RngStream stream)>;

// Per-node stream used by the engine; exposed so that harness code can
// reproduce a node's randomness outside a run.
inline RngStream derive_node_stream(std::uint64_t master_seed,
                                    std::uint64_t node_index) {
  return RngStream::derive(master_seed, node_index);
}

// --- running ------------------------------------------------------------

struct TraceEntry {
  double p = 0.0;      // contention probability at the start of the phase
  bool decided = false;
  Action action = Action::Listen;        // first slot of the phase
  Observation observation = Observation::Silence;
};

struct RunReport {
  static constexpr std::uint64_t kNoDecision = ~std::uint64_t{0};

  std::uint64_t phases_elapsed = 0;
  std::uint64_t slots_elapsed = 0;
  bool aborted = false;  // slot budget ran out before global termination

  std::vector<std::int64_t> outputs;         // valid where decided[v]
  std::vector<bool> decided;
  std::vector<std::uint64_t> decision_slot;  // kNoDecision if never decided

  // One row per phase when tracing was requested, one entry per node.
  std::vector<std::vector<TraceEntry>> trace;

  bool all_decided() const;
};

// Default slot budget, generous against the whp phase bounds of every
// shipped algorithm: 10 * (76*log2(n) + 20*max_degree + 180*ln(n) + 100).
std::uint64_t default_max_slots(std::size_t node_count, std::size_t max_degree);

// Runs one slot-synchronous execution to global termination or until the
// slot budget is exhausted (aborted = true). Termination is checked at
// phase boundaries with an omniscient view: all nodes decided and none
// wants to keep participating. Exceptions thrown by programs propagate.
RunReport run(const Graph& g, ModelSpec model, const ProgramFactory& factory,
              std::uint64_t master_seed, std::uint32_t slots_per_phase,
              std::uint64_t max_slots, bool record_trace = false);

}  // namespace beepsim
