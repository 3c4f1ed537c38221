#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "beepsim/harness.hpp"

namespace {

using namespace beepsim;

// Raw flag values shared by the experiment-driving subcommands.
struct ExperimentFlags {
  std::string graph = "ring";
  std::size_t n = 8;
  double edge_prob = 0.1;
  std::string graph_file;
  std::optional<std::uint64_t> graph_seed;
  std::size_t spokes = 1;
  std::size_t spacing = 1;
  std::string parity = "odd";

  std::string algorithm = "mis";
  std::string model;
  std::optional<std::uint32_t> degree_bound;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> max_slots;
  bool trace = false;

  bool emulate = false;
  std::string k_policy;
  double epsilon = 0.0;
  double c = 0.0;
  std::optional<unsigned> explicit_k;
  std::optional<std::uint64_t> sequence_seed;
  bool distinct_sequences = false;

  std::string out;
  std::string format = "csv";
};

void add_graph_options(CLI::App* cmd, ExperimentFlags& f) {
  cmd->add_option("--graph", f.graph,
                  "graph family: complete|ring|path|star|empty|er|wheel|file")
      ->capture_default_str();
  cmd->add_option("--n", f.n, "node count (leaf count for star)")
      ->capture_default_str();
  cmd->add_option("--p", f.edge_prob, "edge probability for er graphs")
      ->capture_default_str();
  cmd->add_option("--graph-file", f.graph_file, "edge-list file for --graph file");
  cmd->add_option("--graph-seed", f.graph_seed,
                  "seed for random graph families (default: --seed)");
  cmd->add_option("--spokes", f.spokes, "wheel: number of chords");
  cmd->add_option("--spacing", f.spacing, "wheel: cycle distance unit");
  cmd->add_option("--parity", f.parity, "wheel: odd|even chord family");
}

void add_run_options(CLI::App* cmd, ExperimentFlags& f) {
  cmd->add_option("--algorithm", f.algorithm,
                  "colouring|k-colouring|k-colouring-cycle|two-hop-colouring|"
                  "degree|mis|two-hop-mis")
      ->capture_default_str();
  cmd->add_option("--model", f.model,
                  "execution model BL|BcdL|BLcd|BcdLcd (default: what the "
                  "algorithm needs)");
  cmd->add_option("--K", f.degree_bound,
                  "degree bound for the palette colourings (default: true max "
                  "degree)");
  cmd->add_option("--trials", f.trials, "independent runs")->capture_default_str();
  cmd->add_option("--seed", f.seed, "master seed")->capture_default_str();
  cmd->add_option("--max-slots", f.max_slots, "slot budget per run");
  cmd->add_flag("--trace", f.trace, "record per-phase traces (jsonl output)");

  cmd->add_flag("--emulate", f.emulate,
                "run transpiled to the plain BL model");
  cmd->add_option("--k-policy", f.k_policy,
                  "per-node-step|all-nodes-step|whp-step|per-node-run|"
                  "all-nodes-run|whp-run");
  cmd->add_option("--epsilon", f.epsilon, "error budget for epsilon policies");
  cmd->add_option("--c", f.c, "whp exponent (> 2)");
  cmd->add_option("--k", f.explicit_k, "explicit sub-phase count");
  cmd->add_option("--sequence-seed", f.sequence_seed,
                  "base seed for emulation bit sequences");
  cmd->add_flag("--distinct-sequences", f.distinct_sequences,
                "force pairwise distinct bit sequences (exact emulation)");

  cmd->add_option("--out", f.out, "write rows to this file instead of stdout");
  cmd->add_option("--format", f.format, "csv|jsonl")->capture_default_str();
}

KPolicy::Kind parse_policy_kind(const std::string& text) {
  if (text == "per-node-step") return KPolicy::Kind::PerNodePerStep;
  if (text == "all-nodes-step") return KPolicy::Kind::AllNodesPerStep;
  if (text == "whp-step") return KPolicy::Kind::WhpPerStep;
  if (text == "per-node-run") return KPolicy::Kind::PerNodeWholeRun;
  if (text == "all-nodes-run") return KPolicy::Kind::AllNodesWholeRun;
  if (text == "whp-run") return KPolicy::Kind::WhpWholeRun;
  throw std::invalid_argument(
      "unknown k policy '" + text +
      "' (expected per-node-step, all-nodes-step, whp-step, per-node-run, "
      "all-nodes-run or whp-run)");
}

WheelParity parse_parity(const std::string& text) {
  if (text == "odd") return WheelParity::Odd;
  if (text == "even") return WheelParity::Even;
  throw std::invalid_argument("parity must be odd or even");
}

ExperimentConfig to_config(const ExperimentFlags& f) {
  ExperimentConfig config;
  config.graph.family = f.graph;
  config.graph.n = f.n;
  config.graph.edge_prob = f.edge_prob;
  config.graph.graph_seed = f.graph_seed;
  config.graph.path = f.graph_file;
  config.graph.wheel = {f.spokes, f.spacing, parse_parity(f.parity)};
  config.algorithm = parse_algorithm(f.algorithm);
  config.degree_bound = f.degree_bound;
  if (!f.model.empty()) config.model = ModelSpec::parse(f.model);
  config.trials = f.trials;
  config.master_seed = f.seed;
  config.max_slots = f.max_slots;
  config.trace = f.trace;
  config.transpile.enabled = f.emulate;
  config.transpile.explicit_k = f.explicit_k;
  if (!f.k_policy.empty()) config.transpile.policy = parse_policy_kind(f.k_policy);
  config.transpile.epsilon = f.epsilon;
  config.transpile.c = f.c;
  config.transpile.sequence_seed = f.sequence_seed;
  config.transpile.forced_distinct = f.distinct_sequences;
  return config;
}

void write_payload(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << payload;
}

std::string format_rows(const ExperimentFlags& f, const ExperimentResult& res) {
  if (f.format == "csv") return rows_to_csv(res.rows);
  if (f.format == "jsonl") return rows_to_jsonl(res.rows, res.reports);
  throw std::invalid_argument("format must be csv or jsonl");
}

int run_command(const ExperimentFlags& f) {
  const ExperimentResult res = run_experiment(to_config(f));
  write_payload(f.out, format_rows(f, res));
  std::ostream& info = f.out.empty() ? std::cerr : std::cout;
  info << "graph: " << res.graph.node_count() << " nodes, "
       << res.graph.edge_count() << " edges, max degree "
       << max_degree(res.graph) << ", model " << res.model_used.name();
  if (res.emulation_k > 0) info << ", emulated with k=" << res.emulation_k;
  info << "\n" << summary_to_text(summarize(res.rows));
  for (const TrialRow& row : res.rows) {
    if (row.aborted) return 3;
  }
  return 0;
}

// Inserts a leading field into every object of a JSONL payload.
std::string prefix_jsonl_field(const std::string& payload, const std::string& key,
                               const std::string& value) {
  std::istringstream in(payload);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() == '{') {
      const char* sep = line.size() > 1 && line[1] == '}' ? "" : ",";
      out << "{\"" << key << "\":" << value << sep << line.substr(1) << '\n';
    } else {
      out << line << '\n';
    }
  }
  return out.str();
}

int sweep_command(const ExperimentFlags& base, const std::string& param,
                  const std::vector<std::uint64_t>& values) {
  if (values.empty()) throw std::invalid_argument("sweep needs --values");
  std::ostringstream payload;
  std::ostringstream info;
  bool any_aborted = false;
  bool first = true;
  for (std::uint64_t value : values) {
    ExperimentFlags f = base;
    if (param == "n") {
      f.n = value;
    } else if (param == "k") {
      f.explicit_k = static_cast<unsigned>(value);
      f.emulate = true;
    } else {
      throw std::invalid_argument("sweep parameter must be n or k");
    }
    const ExperimentResult res = run_experiment(to_config(f));
    const std::string value_text = std::to_string(value);
    if (f.format == "csv") {
      std::istringstream rows(rows_to_csv(res.rows));
      std::string line;
      std::getline(rows, line);
      if (first) payload << "sweep_" << param << ',' << line << '\n';
      while (std::getline(rows, line)) {
        payload << value_text << ',' << line << '\n';
      }
    } else {
      payload << prefix_jsonl_field(format_rows(f, res), "sweep_" + param,
                                    value_text);
    }
    info << param << "=" << value_text << ": "
         << summary_to_text(summarize(res.rows));
    for (const TrialRow& row : res.rows) any_aborted |= row.aborted;
    first = false;
  }
  write_payload(base.out, payload.str());
  (base.out.empty() ? std::cerr : std::cout) << info.str();
  return any_aborted ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slot-synchronous simulator for beeping networks"};
  app.require_subcommand(1);

  ExperimentFlags run_flags;
  CLI::App* cmd_run = app.add_subcommand("run", "run one experiment");
  cmd_run->set_config("--config", "", "flat key=value config file");
  add_graph_options(cmd_run, run_flags);
  add_run_options(cmd_run, run_flags);

  ExperimentFlags sweep_flags;
  std::string sweep_param = "n";
  std::vector<std::uint64_t> sweep_values;
  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "run the experiment over a list of n or k");
  cmd_sweep->set_config("--config", "", "flat key=value config file");
  add_graph_options(cmd_sweep, sweep_flags);
  add_run_options(cmd_sweep, sweep_flags);
  cmd_sweep->add_option("--param", sweep_param, "n|k")->capture_default_str();
  cmd_sweep->add_option("--values", sweep_values, "values to sweep")
      ->delimiter(',');

  unsigned mr_k = 1;
  std::uint64_t mr_trials = 100000;
  std::uint64_t mr_seed = 0;
  bool mr_check_fp = false;
  CLI::App* cmd_missrate = app.add_subcommand(
      "missrate", "empirical miss rate of the collision-detection round");
  cmd_missrate->add_option("--k", mr_k, "sub-phases")->capture_default_str();
  cmd_missrate->add_option("--trials", mr_trials, "trials")->capture_default_str();
  cmd_missrate->add_option("--seed", mr_seed, "seed")->capture_default_str();
  cmd_missrate->add_flag("--check-false-positives", mr_check_fp,
                         "also run the single-beeper control");

  std::size_t wh_spokes = 8, wh_spacing = 16;
  std::string wh_parity = "odd";
  unsigned wh_steps = 3;
  std::uint64_t wh_trials = 100000, wh_seed = 0;
  CLI::App* cmd_wheel =
      app.add_subcommand("wheel", "chord survival on the lower-bound gadget");
  cmd_wheel->add_option("--spokes", wh_spokes, "number of chords")
      ->capture_default_str();
  cmd_wheel->add_option("--spacing", wh_spacing, "cycle distance unit")
      ->capture_default_str();
  cmd_wheel->add_option("--parity", wh_parity, "odd|even")->capture_default_str();
  cmd_wheel->add_option("--t", wh_steps, "steps a chord must survive")
      ->capture_default_str();
  cmd_wheel->add_option("--trials", wh_trials, "trials")->capture_default_str();
  cmd_wheel->add_option("--seed", wh_seed, "seed")->capture_default_str();

  ExperimentFlags check_flags;
  check_flags.algorithm = "mis";
  CLI::App* cmd_check = app.add_subcommand(
      "transpile-check", "failure rate of an emulated algorithm vs its bound");
  cmd_check->set_config("--config", "", "flat key=value config file");
  add_graph_options(cmd_check, check_flags);
  add_run_options(cmd_check, check_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) return run_command(run_flags);
    if (cmd_sweep->parsed()) {
      return sweep_command(sweep_flags, sweep_param, sweep_values);
    }
    if (cmd_missrate->parsed()) {
      const double rate = missrate_experiment(mr_k, mr_trials, mr_seed);
      const double exact = std::ldexp(1.0, -static_cast<int>(mr_k));
      const double sigma = std::sqrt(exact * (1.0 - exact) /
                                     static_cast<double>(mr_trials));
      std::cout << "k " << mr_k << ", trials " << mr_trials << "\n"
                << "miss rate " << rate << " (exact " << exact << ", 3-sigma "
                << 3.0 * sigma << ")\n";
      if (mr_check_fp) {
        const std::uint64_t fp =
            missrate_false_positives(mr_k, mr_trials, mr_seed + 1);
        std::cout << "false positives " << fp << " / " << mr_trials << "\n";
      }
      return 0;
    }
    if (cmd_wheel->parsed()) {
      const WheelResult res = wheel_experiment(
          {wh_spokes, wh_spacing, parse_parity(wh_parity)}, wh_steps, wh_trials,
          wh_seed);
      const double sigma = std::sqrt(res.expected * (1.0 - res.expected) /
                                     static_cast<double>(res.trials));
      std::cout << "t " << res.steps << ", trials " << res.trials
                << ", expected " << res.expected << ", 3-sigma " << 3.0 * sigma
                << "\n";
      for (std::size_t i = 0; i < res.spoke_survival.size(); ++i) {
        std::cout << "spoke " << i << ": " << res.spoke_survival[i] << "\n";
      }
      return 0;
    }
    if (cmd_check->parsed()) {
      check_flags.emulate = true;
      const TranspileCheckResult res = transpile_check(to_config(check_flags));
      std::cout << "k " << res.sub_phases << ", trials " << res.trials
                << ", failing " << res.failing_trials << " (rate "
                << res.failure_rate << ", per-trial bound "
                << res.analytic_bound << ")\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
