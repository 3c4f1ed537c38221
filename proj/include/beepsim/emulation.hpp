#pragma once

#include <cstdint>
#include <vector>

#include "beepsim/algorithms.hpp"
#include "beepsim/engine.hpp"
#include "beepsim/graph.hpp"

namespace beepsim {

// Collision detection can be bought in the plain beep/listen model by
// stretching every slot into `k` sub-phases of two slots each: a beeper
// occupies one of the two slots per sub-phase according to a random bit
// sequence and listens in the other. Two beeping neighbours whose
// sequences differ anywhere expose each other; the miss probability for
// one neighbour is exactly 2^-k.

// How strong a guarantee the sub-phase count k should buy. The whole-run
// branches account for one emulated detection per phase over the
// algorithm's whp running time; the per-step branches cover one slot.
struct KPolicy {
  enum class Kind {
    PerNodePerStep,    // ceil(log2(1/epsilon))
    AllNodesPerStep,   // ceil(log2(n/epsilon))
    WhpPerStep,        // ceil(c * log2 n)
    PerNodeWholeRun,   // ceil(log2(max_degree/epsilon))
    AllNodesWholeRun,  // floor(log2(n*max_degree/epsilon))
    WhpWholeRun,       // floor(c * log2 n + log2 max_degree)
  };

  Kind kind = Kind::WhpWholeRun;
  double epsilon = 0.0;         // error budget, for the epsilon branches
  double c = 0.0;               // whp exponent, must exceed 2
  std::uint64_t node_count = 0;
  std::uint64_t max_degree = 0;

  static KPolicy per_node_per_step(double epsilon);
  static KPolicy all_nodes_per_step(std::uint64_t node_count, double epsilon);
  static KPolicy whp_per_step(std::uint64_t node_count, double c);
  static KPolicy per_node_whole_run(std::uint64_t max_degree, double epsilon);
  static KPolicy all_nodes_whole_run(std::uint64_t node_count,
                                     std::uint64_t max_degree, double epsilon);
  static KPolicy whp_whole_run(std::uint64_t node_count,
                               std::uint64_t max_degree, double c);
};

// Evaluates the policy formula. Rejects epsilon outside (0, 1), c <= 2 and
// zero node/degree parameters where the branch needs them.
unsigned choose_k(const KPolicy& policy);

// One standalone detection round with fresh coins each sub-phase: every
// node wishing to beep flips a coin per sub-phase to pick its slot. Returns
// one collision flag per node; for a beeping node it means "some neighbour
// beeped too", for a listener "at least two neighbours beeped". Flags are
// never raised without a real cause; they can only be missed.
std::vector<bool> detect_collision_round(const Graph& g,
                                         const std::vector<bool>& wishes,
                                         unsigned sub_phases,
                                         std::uint64_t seed);

// --- fixed-sequence emulation primitives --------------------------------

using BitSequence = std::vector<bool>;

// Slot the beeper occupies in sub-phase i: first slot when the bit is set.
inline unsigned beep_half(const BitSequence& s, std::size_t i) {
  return s[i] ? 0u : 1u;
}

// Collision verdict for an emulated beep with sequence s: true iff a beep
// was heard in any slot the beeper listened in. heard[2i + h] says whether
// some neighbour beeped in slot h of sub-phase i.
bool emulate_bcd_verdict(const BitSequence& s, const std::vector<bool>& heard);

struct LcdVerdict {
  bool heard_any = false;   // some sub-phase carried a beep
  bool collision = false;   // some sub-phase carried beeps in both slots
};

// Verdict for an emulated listen: the listener monitors both slots of
// every sub-phase.
LcdVerdict emulate_lcd_verdict(const std::vector<bool>& heard);

// --- whole-program transpilation ----------------------------------------

enum class SequenceMode {
  Random,          // each node draws its sequence independently
  ForcedDistinct,  // pairwise distinct sequences (needs 2^k >= node count)
};

struct TranspileSettings {
  unsigned sub_phases = 1;  // k, must be >= 1
  std::uint64_t sequence_seed = 0;
  SequenceMode mode = SequenceMode::Random;
};

// The per-node bit sequences the transpiler would use, exposed for tests
// and experiments. Sequences are drawn from a dedicated stream per node,
// independent of the algorithm's own randomness.
std::vector<BitSequence> draw_bit_sequences(unsigned sub_phases,
                                            std::size_t node_count,
                                            std::uint64_t sequence_seed,
                                            SequenceMode mode);

// Rewrites an algorithm written for a collision-detecting model into one
// that runs under plain BL: every original slot becomes 2k BL slots, and
// the wrapped program receives synthesized observations built from the
// emulation verdicts. Each node keeps one fixed sequence for the whole
// run. With random sequences the result is Monte Carlo: a missed
// collision can produce a wrong observation; with pairwise distinct
// sequences the emulation is exact.
Algorithm transpile(const Algorithm& inner, const TranspileSettings& settings,
                    std::size_t node_count);

// Per-run failure probability bound for the transpiled whole-run setup:
// n * max_degree / 2^(k+1).
double transpile_failure_bound(std::size_t node_count, std::size_t max_degree,
                               unsigned sub_phases);

}  // namespace beepsim
