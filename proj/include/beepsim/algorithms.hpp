#pragma once

#include <cstdint>
#include <string>

#include "beepsim/engine.hpp"

namespace beepsim {

// Beeping probability restricted to exact powers of two, p = 2^-exponent.
// The doubling/halving state is the exponent itself, so no floating-point
// drift can creep into algorithm behaviour; draws are exact Bernoulli
// samples. The cap p <= 1/2 (exponent >= 1) is part of the doubling rule.
class DyadicProbability {
 public:
  DyadicProbability() = default;  // starts at 1/2

  std::uint32_t exponent() const { return exponent_; }
  double value() const;

  void halve() { ++exponent_; }
  void double_capped() {
    if (exponent_ > 1) --exponent_;
  }

  bool draw(RngStream& rng) const { return rng.bernoulli_pow2(exponent_); }

  friend bool operator==(const DyadicProbability&, const DyadicProbability&) = default;

 private:
  std::uint32_t exponent_ = 1;
};

// The shared adaptive rule: competition halves the probability, silence
// doubles it (capped at 1/2).
inline DyadicProbability update_probability(DyadicProbability p, bool heard_activity) {
  if (heard_activity) {
    p.halve();
  } else {
    p.double_capped();
  }
  return p;
}

// A runnable algorithm: per-node program factory plus the model and phase
// structure the program is written for. `model` lists the capabilities the
// program needs; running it under a model that covers those capabilities
// behaves identically.
struct Algorithm {
  std::string name;
  ModelSpec model;
  std::uint32_t slots_per_phase = 1;
  ProgramFactory factory;
};

// Colouring with no global knowledge (1 slot per phase, needs Bcd).
// A node keeps a phase counter and contends with adaptive probability;
// the first time it beeps and hears no competing beep, its counter becomes
// its colour. Colours of adjacent nodes always differ because a counter
// value can only be claimed by a node that beeped alone in that phase.
Algorithm colouring_program();

// Colouring with at most degree_bound + 1 colours (2 slots per phase,
// needs Bcd). Nodes sweep a shared counter through the palette
// {0..degree_bound}; a node that beeped alone in the contention slot
// confirms in the second slot and adopts the current palette entry, and
// everyone hearing a confirmation strikes that entry. Using a bound below
// the true maximum degree can exhaust a palette, which is reported as an
// error.
Algorithm k_colouring_program(std::uint32_t degree_bound);

// Variant of the palette colouring where the beeping probability is not
// adaptive: at the start of every palette sweep it is fixed at
// 1 / (2 * remaining palette size) for the whole sweep.
Algorithm k_colouring_cycle_variant_program(std::uint32_t degree_bound);

// Colouring proper at distance <= 2 (4 slots per phase, needs Bcd and Lcd):
// contend, report (listeners that heard a collision), relay (listeners that
// heard anything), terminate (uncoloured nodes beep). Coloured nodes keep
// serving reports until their whole neighbourhood is coloured.
Algorithm two_hop_colouring_program();

// Every node learns its exact degree (5 slots per phase, needs Bcd and
// Lcd): contend, report, confirm (2-hop-exclusive beeper announces itself),
// relay, terminate. Each neighbour of a node confirms exactly once, so
// counting heard confirmations yields the degree.
Algorithm degree_program();

// Maximal independent set (2 slots per phase, needs Bcd). A node that
// beeped alone joins and confirms; neighbours hearing the confirmation are
// out. Output 1 for members, 0 otherwise.
Algorithm mis_program();

// Independent set maximal at distance <= 2 (4 slots per phase, needs Bcd
// and Lcd): contend, report, confirm, relay. A join is announced in the
// confirm slot; everyone hearing it is out and passes the news one hop
// further in the relay slot, eliminating the whole 2-neighbourhood.
Algorithm two_hop_mis_program();

inline constexpr std::int64_t kMisMember = 1;
inline constexpr std::int64_t kMisNonMember = 0;

}  // namespace beepsim
