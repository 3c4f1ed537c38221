#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beepsim/algorithms.hpp"
#include "beepsim/emulation.hpp"
#include "beepsim/engine.hpp"
#include "beepsim/graph.hpp"
#include "beepsim/verify.hpp"

namespace beepsim {

enum class AlgorithmKind {
  Colouring,
  KColouring,
  KColouringCycle,
  TwoHopColouring,
  Degree,
  Mis,
  TwoHopMis,
};

AlgorithmKind parse_algorithm(const std::string& name);
std::string algorithm_name(AlgorithmKind kind);

// Instantiates the algorithm; degree_bound is only consulted by the
// palette colourings.
Algorithm make_algorithm(AlgorithmKind kind, std::uint32_t degree_bound);

// --- experiment configuration -------------------------------------------

struct GraphConfig {
  // one of: complete | ring | path | star | empty | er | wheel | file
  std::string family = "ring";
  std::size_t n = 8;                          // nodes (leaves for star)
  double edge_prob = 0.0;                     // er only
  std::optional<std::uint64_t> graph_seed;    // er only; defaults to master seed
  WheelSpec wheel;                            // wheel only
  std::string path;                           // file only
};

// Builds the graph; `fallback_seed` seeds the random family when the
// config does not pin a graph seed, so one invocation samples one graph
// and all trials share it.
Graph build_graph(const GraphConfig& config, std::uint64_t fallback_seed);

struct TranspileConfig {
  bool enabled = false;
  std::optional<unsigned> explicit_k;        // overrides the policy
  std::optional<KPolicy::Kind> policy;       // evaluated against the graph
  double epsilon = 0.0;
  double c = 0.0;
  std::optional<std::uint64_t> sequence_seed;  // base; per-trial seeds derive
  bool forced_distinct = false;
};

struct ExperimentConfig {
  GraphConfig graph;
  AlgorithmKind algorithm = AlgorithmKind::Mis;
  std::optional<std::uint32_t> degree_bound;  // K; defaults to the true max degree
  std::optional<ModelSpec> model;             // defaults to the algorithm's model
  TranspileConfig transpile;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  std::optional<std::uint64_t> max_slots;     // defaults to default_max_slots
  bool trace = false;                         // keep full reports per trial
};

// --- results ------------------------------------------------------------

struct TrialRow {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t phases = 0;
  std::uint64_t slots = 0;
  bool aborted = false;
  std::uint64_t violations = 0;
  std::optional<std::int64_t> max_colour;     // colouring algorithms
  std::optional<std::uint64_t> palette_size;  // distinct colours used
  std::optional<std::uint64_t> set_size;      // MIS algorithms
  std::optional<std::uint64_t> sweeps;        // palette sweeps (cycle variant)
};

struct ExperimentResult {
  Graph graph;
  ModelSpec model_used;
  std::uint32_t degree_bound_used = 0;  // palette colourings only
  unsigned emulation_k = 0;             // 0 when not transpiled
  std::vector<TrialRow> rows;
  std::vector<RunReport> reports;       // full reports only when tracing
};

// Runs config.trials independent executions (trial seeds derived from the
// master seed), checking every finished run with the matching verifier.
// Config errors throw; algorithm failures surface as violation counts.
ExperimentResult run_experiment(const ExperimentConfig& config);

// --- summaries and serialization ----------------------------------------

struct DistributionSummary {
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  double mean = 0.0;
  std::uint64_t median = 0;
  std::uint64_t p90 = 0;
  std::uint64_t p99 = 0;
};

struct Summary {
  std::uint64_t trials = 0;
  std::uint64_t aborted = 0;
  std::uint64_t trials_with_violations = 0;
  std::uint64_t total_violations = 0;
  DistributionSummary phases;
  DistributionSummary slots;
  // Fraction of trials whose phase count exceeds the supplied bound.
  std::optional<double> phase_bound_exceedance;
};

// Rejects an empty row list.
Summary summarize(const std::vector<TrialRow>& rows,
                  std::optional<double> phase_bound = std::nullopt);

std::string summary_to_text(const Summary& summary);

// CSV with a fixed header; optional columns are left empty where a metric
// does not apply. Deterministic output for identical rows.
std::string rows_to_csv(const std::vector<TrialRow>& rows);

// One JSON object per line. When reports are supplied (trace mode), each
// line carries the per-phase trace of its trial.
std::string rows_to_jsonl(const std::vector<TrialRow>& rows,
                          const std::vector<RunReport>& reports = {});

// --- focused experiments ------------------------------------------------

// Empirical miss rate of the detection primitive: two adjacent nodes beep
// in every trial; counts how often the first one misses the collision.
// The exact miss probability is 2^-k.
double missrate_experiment(unsigned sub_phases, std::uint64_t trials,
                           std::uint64_t seed);

// Single-beeper control: one beeping node, no neighbour beeping. Returns
// the number of (necessarily false) collision flags over all trials; the
// detection never raises one, so this is expected to be zero.
std::uint64_t missrate_false_positives(unsigned sub_phases,
                                       std::uint64_t trials,
                                       std::uint64_t seed);

struct WheelResult {
  std::uint64_t trials = 0;
  unsigned steps = 0;                 // t
  double expected = 0.0;              // 2^-t
  std::vector<double> spoke_survival; // per spoke: both chord ends agreed for t steps
};

// Runs the coin process of the detection primitive on the wheel gadget:
// every cycle-position multiple of the spacing beeps; a chord survives a
// step when its two endpoints pick the same slot. Requires steps < spacing.
WheelResult wheel_experiment(const WheelSpec& spec, unsigned steps,
                             std::uint64_t trials, std::uint64_t seed);

struct TranspileCheckResult {
  unsigned sub_phases = 0;
  std::uint64_t trials = 0;
  std::uint64_t failing_trials = 0;  // trials with at least one violation
  double failure_rate = 0.0;
  double analytic_bound = 0.0;       // per-trial failure bound
};

// Runs the configured algorithm transpiled to BL and counts trials whose
// output fails verification; the observed rate should sit below the
// analytic per-trial bound.
TranspileCheckResult transpile_check(const ExperimentConfig& config);

}  // namespace beepsim
