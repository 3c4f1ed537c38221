#pragma once

// Wraps node programs so tests can capture the exact per-slot actions and
// observations a program saw, e.g. to compare a native run against its
// transpiled counterpart.

#include <memory>
#include <vector>

#include "beepsim/engine.hpp"

namespace beepsim::testsupport {

struct SlotRecord {
  Action action;
  Observation observation;
};

struct RunLog {
  // per node, per slot in play order
  std::vector<std::vector<SlotRecord>> nodes;
};

// Decorates `inner` so every wrapped program appends its slots to the log.
// When the wrapped factory itself wraps another program (a transpiled
// algorithm), the log captures what the *inner* program saw, i.e. the
// synthesized observations.
ProgramFactory recording(ProgramFactory inner, std::shared_ptr<RunLog> log);

}  // namespace beepsim::testsupport
