#include "beepsim/algorithms.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace beepsim {

double DyadicProbability::value() const {
  return std::ldexp(1.0, -static_cast<int>(std::min(exponent_, 1074u)));
}

namespace {

[[noreturn]] void model_mismatch(const char* algo, const char* need) {
  throw std::runtime_error(std::string(algo) + " needs " + need +
                           "; run it under a model with that capability");
}

// Shared guards: every algorithm below relies on exclusive-beep detection,
// and the 2-hop ones additionally on the one-vs-many listener distinction.
void require_bcd(const char* algo, Observation obs) {
  if (obs == Observation::BeepedBlind) model_mismatch(algo, "collision-detecting beepers");
}

void require_lcd(const char* algo, Observation obs) {
  if (obs == Observation::HeardBeep) model_mismatch(algo, "collision-detecting listeners");
}

// --- colouring without knowledge (1 slot per phase) ---------------------

class ColouringProgram final : public NodeProgram {
 public:
  explicit ColouringProgram(RngStream rng) : rng_(rng) {}

  Action act(std::uint64_t, std::uint32_t) override {
    if (colour_) return Action::Listen;  // decided nodes go silent
    beeped_ = p_.draw(rng_);
    return beeped_ ? Action::Beep : Action::Listen;
  }

  void absorb(Observation obs) override {
    if (colour_) return;
    if (beeped_) require_bcd("colouring", obs);
    if (obs == Observation::BeepedAlone) {
      colour_ = counter_;  // exclusive beep claims the current counter value
      return;
    }
    p_ = update_probability(p_, observation_heard_activity(obs));
    ++counter_;
  }

  std::optional<std::int64_t> decision() const override { return colour_; }

  std::optional<double> contention_probability() const override {
    return p_.value();
  }

 private:
  RngStream rng_;
  DyadicProbability p_;
  std::optional<std::int64_t> colour_;
  std::int64_t counter_ = 0;
  bool beeped_ = false;
};

// --- palette colouring (2 slots per phase) ------------------------------
//
// Slot 0: nodes whose current palette entry is still open contend.
// Slot 1: a node that beeped alone confirms and adopts the entry; every
//         listener hearing the confirmation strikes the entry.

class KColouringBase : public NodeProgram {
 public:
  KColouringBase(std::uint32_t degree_bound, RngStream rng)
      : rng_(rng),
        palette_open_(static_cast<std::size_t>(degree_bound) + 1, true),
        open_count_(static_cast<std::size_t>(degree_bound) + 1) {}

  Action act(std::uint64_t phase, std::uint32_t slot) override {
    if (slot == 0) {
      begin_phase(phase);
      active_ = !colour_ && palette_open_[counter_];
      beeped_ = active_ && draw_contention();
      return beeped_ ? Action::Beep : Action::Listen;
    }
    adopt_ = !colour_ && beeped_ && contention_obs_ == Observation::BeepedAlone;
    return adopt_ ? Action::Beep : Action::Listen;
  }

  void absorb(Observation obs) override {
    if (slot_toggle_ == 0) {
      slot_toggle_ = 1;
      if (beeped_) require_bcd("palette colouring", obs);
      contention_obs_ = obs;
      return;
    }
    slot_toggle_ = 0;
    if (adopt_) {
      colour_ = counter_;
    } else if (!colour_) {
      if (active_) {
        p_ = update_probability(p_, observation_heard_activity(contention_obs_));
      }
      if (observation_heard_activity(obs)) strike(counter_);
    }
    counter_ = (counter_ + 1) % palette_open_.size();
  }

  std::optional<std::int64_t> decision() const override { return colour_; }

 protected:
  virtual void begin_phase(std::uint64_t) {}
  virtual bool draw_contention() { return p_.draw(rng_); }

  void strike(std::size_t entry) {
    if (!palette_open_[entry]) return;
    palette_open_[entry] = false;
    --open_count_;
    if (open_count_ == 0) {
      throw std::runtime_error(
          "palette exhausted: the degree bound is below the true maximum degree");
    }
  }

  RngStream rng_;
  DyadicProbability p_;
  std::vector<bool> palette_open_;
  std::size_t open_count_;
  std::optional<std::int64_t> colour_;
  std::size_t counter_ = 0;
  Observation contention_obs_ = Observation::Silence;
  bool active_ = false;
  bool beeped_ = false;
  bool adopt_ = false;
  unsigned slot_toggle_ = 0;
};

class KColouringProgram final : public KColouringBase {
 public:
  using KColouringBase::KColouringBase;

  std::optional<double> contention_probability() const override {
    return p_.value();
  }
};

// Sweep variant: the contention probability is frozen at the start of each
// full palette sweep to 1 / (2 * open entries) and held for the sweep.
class KColouringCycleProgram final : public KColouringBase {
 public:
  KColouringCycleProgram(std::uint32_t degree_bound, RngStream rng)
      : KColouringBase(degree_bound, rng) {
    beep_denominator_ = 2 * open_count_;
  }

  std::optional<double> contention_probability() const override {
    return 1.0 / static_cast<double>(beep_denominator_);
  }

 private:
  void begin_phase(std::uint64_t phase) override {
    if (phase % palette_open_.size() == 0 && !colour_) {
      beep_denominator_ = 2 * open_count_;
    }
  }

  bool draw_contention() override {
    return rng_.uniform_below(beep_denominator_) == 0;
  }

  std::uint64_t beep_denominator_ = 2;
};

// --- 2-hop colouring (4 slots per phase) --------------------------------
//
// Slot 0: uncoloured nodes contend.  Slot 1: listeners that heard two or
// more beeps report.  Slot 2: listeners that heard anything relay, pushing
// knowledge of contention one hop further.  A node that beeped alone and
// heard no report adopted its counter in between.  Slot 3: uncoloured
// nodes beep; a coloured node hearing silence there stops serving.

class TwoHopColouringProgram final : public NodeProgram {
 public:
  explicit TwoHopColouringProgram(RngStream rng) : rng_(rng) {}

  Action act(std::uint64_t, std::uint32_t slot) override {
    slot_ = slot;
    switch (slot) {
      case 0:
        beeped_ = !colour_ && p_.draw(rng_);
        return beeped_ ? Action::Beep : Action::Listen;
      case 1:
        return (!done_ && !beeped_ && contention_obs_ == Observation::HeardTwoPlus)
                   ? Action::Beep
                   : Action::Listen;
      case 2:
        return (!done_ && !beeped_ && observation_heard_activity(contention_obs_))
                   ? Action::Beep
                   : Action::Listen;
      default:
        return (!colour_ && !done_) ? Action::Beep : Action::Listen;
    }
  }

  void absorb(Observation obs) override {
    switch (slot_) {
      case 0:
        if (beeped_) {
          require_bcd("2-hop colouring", obs);
        } else {
          require_lcd("2-hop colouring", obs);
        }
        contention_obs_ = obs;
        break;
      case 1:
        // The candidate listened here; silence means no conflict anywhere
        // within distance 2, so the counter value is safe to take.
        if (beeped_ && contention_obs_ == Observation::BeepedAlone &&
            obs == Observation::Silence) {
          colour_ = counter_;
        }
        break;
      case 2:
        if (!colour_) {
          const bool activity = beeped_ ||
                                observation_heard_activity(contention_obs_) ||
                                observation_heard_activity(obs);
          p_ = update_probability(p_, activity);
        }
        break;
      default:
        if (colour_ && !done_ && obs == Observation::Silence) {
          done_ = true;  // whole neighbourhood coloured, stop serving
        }
        if (!colour_) ++counter_;
        break;
    }
  }

  std::optional<std::int64_t> decision() const override { return colour_; }

  bool wants_termination_participation() const override {
    return colour_.has_value() && !done_;
  }

  std::optional<double> contention_probability() const override {
    return p_.value();
  }

 private:
  RngStream rng_;
  DyadicProbability p_;
  std::optional<std::int64_t> colour_;
  std::int64_t counter_ = 0;
  Observation contention_obs_ = Observation::Silence;
  std::uint32_t slot_ = 0;
  bool beeped_ = false;
  bool done_ = false;
};

// --- degree computation (5 slots per phase) -----------------------------
//
// Like 2-hop colouring, but a 2-hop-exclusive contender announces itself
// with a confirmation beep instead of taking a colour. Every neighbour
// hears exactly one confirmation per confirming node, so counting them
// gives the degree. Uncounted nodes keep the run alive in the last slot; a
// counted node hearing silence there has heard all its neighbours confirm.

class DegreeProgram final : public NodeProgram {
 public:
  explicit DegreeProgram(RngStream rng) : rng_(rng) {}

  Action act(std::uint64_t, std::uint32_t slot) override {
    slot_ = slot;
    switch (slot) {
      case 0:
        beeped_ = !counted_ && p_.draw(rng_);
        return beeped_ ? Action::Beep : Action::Listen;
      case 1:
        return (!done_ && !beeped_ && contention_obs_ == Observation::HeardTwoPlus)
                   ? Action::Beep
                   : Action::Listen;
      case 2:
        confirm_ = !counted_ && beeped_ &&
                   contention_obs_ == Observation::BeepedAlone &&
                   report_obs_ == Observation::Silence;
        return confirm_ ? Action::Beep : Action::Listen;
      case 3:
        return (!done_ && !beeped_ && observation_heard_activity(contention_obs_))
                   ? Action::Beep
                   : Action::Listen;
      default:
        return (!counted_ && !done_) ? Action::Beep : Action::Listen;
    }
  }

  void absorb(Observation obs) override {
    switch (slot_) {
      case 0:
        if (beeped_) {
          require_bcd("degree computation", obs);
        } else {
          require_lcd("degree computation", obs);
        }
        contention_obs_ = obs;
        break;
      case 1:
        report_obs_ = obs;
        break;
      case 2:
        if (confirm_) {
          counted_ = true;
        } else if (!done_ && observation_heard_activity(obs)) {
          // exactly one node within distance 2 confirms per phase, so this
          // was exactly one neighbour
          ++neighbour_count_;
        }
        break;
      case 3:
        if (!counted_) {
          const bool activity = beeped_ ||
                                observation_heard_activity(contention_obs_) ||
                                observation_heard_activity(obs);
          p_ = update_probability(p_, activity);
        }
        break;
      default:
        if (counted_ && !done_ && obs == Observation::Silence) {
          degree_ = neighbour_count_;
          done_ = true;
        }
        break;
    }
  }

  std::optional<std::int64_t> decision() const override { return degree_; }

  std::optional<double> contention_probability() const override {
    return p_.value();
  }

 private:
  RngStream rng_;
  DyadicProbability p_;
  std::optional<std::int64_t> degree_;
  std::int64_t neighbour_count_ = 0;
  Observation contention_obs_ = Observation::Silence;
  Observation report_obs_ = Observation::Silence;
  std::uint32_t slot_ = 0;
  bool beeped_ = false;
  bool confirm_ = false;
  bool counted_ = false;
  bool done_ = false;
};

// --- maximal independent set (2 slots per phase) ------------------------

class MisProgram final : public NodeProgram {
 public:
  explicit MisProgram(RngStream rng) : rng_(rng) {}

  Action act(std::uint64_t, std::uint32_t slot) override {
    if (slot == 0) {
      beeped_ = contending() && p_.draw(rng_);
      return beeped_ ? Action::Beep : Action::Listen;
    }
    join_ = contending() && beeped_ && contention_obs_ == Observation::BeepedAlone;
    return join_ ? Action::Beep : Action::Listen;
  }

  void absorb(Observation obs) override {
    if (slot_toggle_ == 0) {
      slot_toggle_ = 1;
      if (beeped_) require_bcd("MIS", obs);
      contention_obs_ = obs;
      return;
    }
    slot_toggle_ = 0;
    if (join_) {
      status_ = Status::InSet;
      return;
    }
    if (!contending()) return;
    if (observation_heard_activity(obs)) {
      status_ = Status::OutOfSet;  // a neighbour just joined
      return;
    }
    p_ = update_probability(p_, observation_heard_activity(contention_obs_));
  }

  std::optional<std::int64_t> decision() const override {
    switch (status_) {
      case Status::InSet: return kMisMember;
      case Status::OutOfSet: return kMisNonMember;
      default: return std::nullopt;
    }
  }

  std::optional<double> contention_probability() const override {
    return p_.value();
  }

 private:
  enum class Status { Contending, InSet, OutOfSet };

  bool contending() const { return status_ == Status::Contending; }

  RngStream rng_;
  DyadicProbability p_;
  Status status_ = Status::Contending;
  Observation contention_obs_ = Observation::Silence;
  bool beeped_ = false;
  bool join_ = false;
  unsigned slot_toggle_ = 0;
};

// --- 2-hop maximal independent set (4 slots per phase) ------------------
//
// Slot 0: contenders beep.  Slot 1: listeners that heard a collision
// report, blocking 1-hop-exclusive beepers with a 2-hop conflict.  Slot 2:
// a contender that beeped alone and heard no report joins and confirms.
// Slot 3: everyone who heard the confirmation relays it, so the news
// reaches distance 2. Any non-member hearing a confirmation or relay is
// permanently out; eliminated nodes keep serving reports and relays.

class TwoHopMisProgram final : public NodeProgram {
 public:
  explicit TwoHopMisProgram(RngStream rng) : rng_(rng) {}

  Action act(std::uint64_t, std::uint32_t slot) override {
    slot_ = slot;
    switch (slot) {
      case 0:
        beeped_ = contending() && p_.draw(rng_);
        return beeped_ ? Action::Beep : Action::Listen;
      case 1:
        return (!beeped_ && contention_obs_ == Observation::HeardTwoPlus)
                   ? Action::Beep
                   : Action::Listen;
      case 2:
        join_ = contending() && beeped_ &&
                contention_obs_ == Observation::BeepedAlone &&
                report_obs_ == Observation::Silence;
        return join_ ? Action::Beep : Action::Listen;
      default: {
        const bool relay = relay_pending_;
        relay_pending_ = false;
        return relay ? Action::Beep : Action::Listen;
      }
    }
  }

  void absorb(Observation obs) override {
    switch (slot_) {
      case 0:
        if (beeped_) {
          require_bcd("2-hop MIS", obs);
        } else {
          require_lcd("2-hop MIS", obs);
        }
        contention_obs_ = obs;
        break;
      case 1:
        report_obs_ = obs;
        break;
      case 2:
        if (join_) {
          status_ = Status::InSet;
        } else if (observation_heard_activity(obs)) {
          // A neighbour joined. Everyone who is not that member itself must
          // pass the news on, whether or not it was still contending;
          // otherwise nodes at distance 2 would never learn of the join.
          if (contending()) status_ = Status::OutOfSet;
          if (status_ != Status::InSet) relay_pending_ = true;
        }
        break;
      default:
        if (contending()) {
          if (observation_heard_activity(obs)) {
            status_ = Status::OutOfSet;  // member at distance 2
          } else {
            const bool activity = observation_heard_activity(contention_obs_) ||
                                  observation_heard_activity(report_obs_);
            p_ = update_probability(p_, activity);
          }
        }
        break;
    }
  }

  std::optional<std::int64_t> decision() const override {
    switch (status_) {
      case Status::InSet: return kMisMember;
      case Status::OutOfSet: return kMisNonMember;
      default: return std::nullopt;
    }
  }

  std::optional<double> contention_probability() const override {
    return p_.value();
  }

 private:
  enum class Status { Contending, InSet, OutOfSet };

  bool contending() const { return status_ == Status::Contending; }

  RngStream rng_;
  DyadicProbability p_;
  Status status_ = Status::Contending;
  Observation contention_obs_ = Observation::Silence;
  Observation report_obs_ = Observation::Silence;
  std::uint32_t slot_ = 0;
  bool beeped_ = false;
  bool join_ = false;
  bool relay_pending_ = false;
};

template <typename Program, typename... Args>
ProgramFactory factory_for(Args... args) {
  return [args...](std::size_t, RngStream rng) -> std::unique_ptr<NodeProgram> {
    return std::make_unique<Program>(args..., rng);
  };
}

}  // namespace

Algorithm colouring_program() {
  return {"colouring", ModelSpec::bcd_l(), 1, factory_for<ColouringProgram>()};
}

Algorithm k_colouring_program(std::uint32_t degree_bound) {
  return {"k-colouring", ModelSpec::bcd_l(), 2,
          factory_for<KColouringProgram>(degree_bound)};
}

Algorithm k_colouring_cycle_variant_program(std::uint32_t degree_bound) {
  return {"k-colouring-cycle", ModelSpec::bcd_l(), 2,
          factory_for<KColouringCycleProgram>(degree_bound)};
}

Algorithm two_hop_colouring_program() {
  return {"two-hop-colouring", ModelSpec::bcd_lcd(), 4,
          factory_for<TwoHopColouringProgram>()};
}

Algorithm degree_program() {
  return {"degree", ModelSpec::bcd_lcd(), 5, factory_for<DegreeProgram>()};
}

Algorithm mis_program() {
  return {"mis", ModelSpec::bcd_l(), 2, factory_for<MisProgram>()};
}

Algorithm two_hop_mis_program() {
  return {"two-hop-mis", ModelSpec::bcd_lcd(), 4,
          factory_for<TwoHopMisProgram>()};
}

}  // namespace beepsim
