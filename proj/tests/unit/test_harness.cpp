#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "beepsim/harness.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support/oracles.hpp"

using namespace beepsim;
namespace ts = beepsim::testsupport;

TEST_CASE("algorithm names round-trip") {
  for (AlgorithmKind kind :
       {AlgorithmKind::Colouring, AlgorithmKind::KColouring,
        AlgorithmKind::KColouringCycle, AlgorithmKind::TwoHopColouring,
        AlgorithmKind::Degree, AlgorithmKind::Mis, AlgorithmKind::TwoHopMis}) {
    CHECK(parse_algorithm(algorithm_name(kind)) == kind);
    CHECK(make_algorithm(kind, 4).name == algorithm_name(kind));
  }
  CHECK_THROWS_AS(parse_algorithm("quicksort"), std::invalid_argument);
}

TEST_CASE("graph configs build the family they name") {
  GraphConfig config;
  config.family = "complete";
  config.n = 5;
  CHECK(build_graph(config, 0).edge_count() == 10);

  config.family = "ring";
  config.n = 6;
  CHECK(build_graph(config, 0).edge_count() == 6);

  config.family = "path";
  config.n = 6;
  CHECK(build_graph(config, 0).edge_count() == 5);

  config.family = "star";
  config.n = 6;  // leaves
  const Graph star = build_graph(config, 0);
  CHECK(star.node_count() == 7);
  CHECK(star.degree(0) == 6);

  config.family = "empty";
  config.n = 4;
  CHECK(build_graph(config, 0).edge_count() == 0);

  config.family = "wheel";
  config.wheel = {2, 3, WheelParity::Odd};
  CHECK(build_graph(config, 0).node_count() == 24);

  config.family = "does-not-exist";
  CHECK_THROWS_AS(build_graph(config, 0), std::invalid_argument);
}

TEST_CASE("random graph configs pin their seed or inherit the fallback") {
  GraphConfig config;
  config.family = "er";
  config.n = 12;
  config.edge_prob = 0.4;
  const Graph from_fallback = build_graph(config, 5);
  CHECK(from_fallback.edges() == make_erdos_renyi(12, 0.4, 5).edges());

  config.graph_seed = 9;
  const Graph pinned = build_graph(config, 5);
  CHECK(pinned.edges() == make_erdos_renyi(12, 0.4, 9).edges());
  CHECK(build_graph(config, 777).edges() == pinned.edges());
}

TEST_CASE("file graph configs read the edge-list format") {
  const std::string path = "/tmp/beepsim_test_graph.txt";
  {
    std::ofstream out(path);
    out << save_edge_list(make_ring(5));
  }
  GraphConfig config;
  config.family = "file";
  config.path = path;
  const Graph loaded = build_graph(config, 0);
  CHECK(loaded.edges() == make_ring(5).edges());
  std::remove(path.c_str());
}

TEST_CASE("experiments produce one checked row per trial") {
  ExperimentConfig config;
  config.graph.family = "ring";
  config.graph.n = 8;
  config.algorithm = AlgorithmKind::Mis;
  config.trials = 20;
  config.master_seed = 33;
  const ExperimentResult result = run_experiment(config);

  CHECK(result.model_used == ModelSpec::bcd_l());
  CHECK(result.emulation_k == 0);
  REQUIRE(result.rows.size() == 20);
  CHECK(result.reports.empty());  // no tracing requested
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const TrialRow& row = result.rows[trial];
    CHECK(row.trial == trial);
    CHECK(row.seed == derive_seed(33, trial));
    CHECK(!row.aborted);
    CHECK(row.violations == 0);
    REQUIRE(row.set_size.has_value());
    CHECK(*row.set_size >= 2);  // a ring of 8 needs at least 3 members
    CHECK(!row.max_colour.has_value());
    CHECK(!row.sweeps.has_value());
  }
}

TEST_CASE("experiments are reproducible end to end") {
  ExperimentConfig config;
  config.graph.family = "er";
  config.graph.n = 20;
  config.graph.edge_prob = 0.2;
  config.algorithm = AlgorithmKind::Colouring;
  config.trials = 5;
  config.master_seed = 7;
  const ExperimentResult a = run_experiment(config);
  const ExperimentResult b = run_experiment(config);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].seed == b.rows[i].seed);
    CHECK(a.rows[i].phases == b.rows[i].phases);
    CHECK(a.rows[i].slots == b.rows[i].slots);
    CHECK(a.rows[i].max_colour == b.rows[i].max_colour);
  }
}

TEST_CASE("colouring experiments report palette metrics") {
  ExperimentConfig config;
  config.graph.family = "complete";
  config.graph.n = 5;
  config.algorithm = AlgorithmKind::KColouring;
  config.trials = 10;
  config.master_seed = 44;
  const ExperimentResult result = run_experiment(config);
  CHECK(result.degree_bound_used == 4);  // defaults to the max degree
  for (const TrialRow& row : result.rows) {
    CHECK(row.violations == 0);
    REQUIRE(row.max_colour.has_value());
    CHECK(*row.max_colour <= 4);
    REQUIRE(row.palette_size.has_value());
    CHECK(*row.palette_size == 5);  // a clique needs all distinct colours
    CHECK(!row.set_size.has_value());
  }
}

TEST_CASE("cycle-variant experiments count palette sweeps") {
  ExperimentConfig config;
  config.graph.family = "ring";
  config.graph.n = 6;
  config.algorithm = AlgorithmKind::KColouringCycle;
  config.trials = 8;
  config.master_seed = 10;
  const ExperimentResult result = run_experiment(config);
  const std::uint64_t sweep_len = result.degree_bound_used + 1;
  for (const TrialRow& row : result.rows) {
    REQUIRE(row.sweeps.has_value());
    CHECK(*row.sweeps == (row.phases + sweep_len - 1) / sweep_len);
  }
}

TEST_CASE("aborted trials skip result checking and metrics") {
  ExperimentConfig config;
  config.graph.family = "ring";
  config.graph.n = 8;
  config.algorithm = AlgorithmKind::Colouring;
  config.trials = 3;
  config.master_seed = 1;
  config.max_slots = 1;  // nothing can finish in one slot
  const ExperimentResult result = run_experiment(config);
  for (const TrialRow& row : result.rows) {
    CHECK(row.aborted);
    CHECK(row.violations == 0);
    CHECK(!row.max_colour.has_value());
  }
}

TEST_CASE("tracing keeps the full reports") {
  ExperimentConfig config;
  config.graph.family = "path";
  config.graph.n = 4;
  config.algorithm = AlgorithmKind::Mis;
  config.trials = 3;
  config.master_seed = 5;
  config.trace = true;
  const ExperimentResult result = run_experiment(config);
  REQUIRE(result.reports.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(result.reports[i].phases_elapsed == result.rows[i].phases);
    CHECK(result.reports[i].trace.size() == result.rows[i].phases);
  }
}

TEST_CASE("experiments validate the requested model") {
  ExperimentConfig config;
  config.graph.family = "ring";
  config.graph.n = 6;
  config.algorithm = AlgorithmKind::Mis;
  config.trials = 2;

  config.model = ModelSpec::bcd_lcd();  // stronger than needed: fine
  CHECK(run_experiment(config).model_used == ModelSpec::bcd_lcd());

  config.model = ModelSpec::bl();  // too weak
  CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
}

TEST_CASE("emulated experiments run under the plain model") {
  ExperimentConfig config;
  config.graph.family = "er";
  config.graph.n = 16;
  config.graph.edge_prob = 0.2;
  config.algorithm = AlgorithmKind::Mis;
  config.trials = 10;
  config.master_seed = 21;
  config.transpile.enabled = true;
  config.transpile.explicit_k = 10;
  const ExperimentResult result = run_experiment(config);
  CHECK(result.model_used == ModelSpec::bl());
  CHECK(result.emulation_k == 10);
  for (const TrialRow& row : result.rows) {
    CHECK(!row.aborted);
    CHECK(row.violations == 0);  // k = 10 misses are rare on a graph this size
  }

  config.model = ModelSpec::bcd_l();  // contradicts emulation
  CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
  config.model.reset();
  config.transpile.explicit_k = 0;
  CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
  config.transpile.explicit_k.reset();
  CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
}

TEST_CASE("emulated experiments can derive k from a policy") {
  ExperimentConfig config;
  config.graph.family = "er";
  config.graph.n = 16;
  config.graph.edge_prob = 0.2;
  config.algorithm = AlgorithmKind::Mis;
  config.trials = 2;
  config.master_seed = 21;
  config.transpile.enabled = true;
  config.transpile.policy = KPolicy::Kind::WhpWholeRun;
  config.transpile.c = 3.0;
  const ExperimentResult result = run_experiment(config);
  const std::size_t delta = max_degree(result.graph);
  CHECK(result.emulation_k ==
        choose_k(KPolicy::whp_whole_run(16, delta, 3.0)));
}

TEST_CASE("forced-distinct emulation never produces violations") {
  ExperimentConfig config;
  config.graph.family = "er";
  config.graph.n = 16;
  config.graph.edge_prob = 0.25;
  config.algorithm = AlgorithmKind::Mis;
  config.trials = 30;
  config.master_seed = 2;
  config.transpile.enabled = true;
  config.transpile.explicit_k = 4;  // 2^4 = 16 sequences, exactly enough
  config.transpile.forced_distinct = true;
  const ExperimentResult result = run_experiment(config);
  for (const TrialRow& row : result.rows) {
    CHECK(!row.aborted);
    CHECK(row.violations == 0);
  }
}

TEST_CASE("summaries use nearest-rank percentiles") {
  std::vector<TrialRow> rows;
  for (std::uint64_t phases : {3, 5, 7}) {
    TrialRow row;
    row.phases = phases;
    row.slots = 2 * phases;
    rows.push_back(row);
  }
  rows[1].violations = 2;
  rows[2].aborted = true;

  const Summary s = summarize(rows);
  CHECK(s.trials == 3);
  CHECK(s.aborted == 1);
  CHECK(s.trials_with_violations == 1);
  CHECK(s.total_violations == 2);
  CHECK(s.phases.min == 3);
  CHECK(s.phases.max == 7);
  CHECK(s.phases.mean == doctest::Approx(5.0));
  CHECK(s.phases.median == 5);
  CHECK(s.phases.p90 == 7);
  CHECK(s.slots.mean == doctest::Approx(10.0));
  CHECK(!s.phase_bound_exceedance.has_value());

  const Summary bounded = summarize(rows, 5.0);
  REQUIRE(bounded.phase_bound_exceedance.has_value());
  CHECK(*bounded.phase_bound_exceedance == doctest::Approx(1.0 / 3.0));

  CHECK_THROWS_AS(summarize({}), std::invalid_argument);
}

TEST_CASE("percentiles follow the nearest-rank rule on 1..100") {
  std::vector<TrialRow> rows(100);
  for (std::uint64_t i = 0; i < 100; ++i) rows[i].phases = i + 1;
  const Summary s = summarize(rows);
  CHECK(s.phases.median == 50);
  CHECK(s.phases.p90 == 90);
  CHECK(s.phases.p99 == 99);
  CHECK(s.phases.max == 100);
}

TEST_CASE("summary text lists the headline numbers") {
  std::vector<TrialRow> rows(2);
  rows[0].phases = 4;
  rows[1].phases = 6;
  const std::string text = summary_to_text(summarize(rows));
  CHECK(text.find("trials 2") != std::string::npos);
  CHECK(text.find("phases: min 4") != std::string::npos);
  CHECK(text.find("max 6") != std::string::npos);
}

TEST_CASE("csv serialization is exact and stable") {
  TrialRow a;
  a.trial = 0;
  a.seed = 11;
  a.phases = 4;
  a.slots = 8;
  a.max_colour = 3;
  a.palette_size = 2;

  TrialRow b;
  b.trial = 1;
  b.seed = 12;
  b.phases = 6;
  b.slots = 12;
  b.aborted = true;
  b.violations = 2;
  b.set_size = 5;
  b.sweeps = 3;

  CHECK(rows_to_csv({a, b}) ==
        "trial,seed,phases,slots,aborted,violations,max_colour,palette_size,"
        "set_size,sweeps\n"
        "0,11,4,8,0,0,3,2,,\n"
        "1,12,6,12,1,2,,,5,3\n");
}

TEST_CASE("jsonl serialization round-trips through a parser") {
  ExperimentConfig config;
  config.graph.family = "path";
  config.graph.n = 4;
  config.algorithm = AlgorithmKind::Mis;
  config.trials = 2;
  config.master_seed = 5;
  config.trace = true;
  const ExperimentResult result = run_experiment(config);

  const std::string jsonl = rows_to_jsonl(result.rows, result.reports);
  std::istringstream lines(jsonl);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["trial"] == count);
    CHECK(j["seed"] == result.rows[count].seed);
    CHECK(j["violations"] == 0);
    CHECK(j["outputs"].size() == 4);
    REQUIRE(j.contains("trace"));
    REQUIRE(j["trace"].size() == result.rows[count].phases);
    for (const auto& phase : j["trace"]) {
      REQUIRE(phase.size() == 4);
      for (const auto& entry : phase) {
        CHECK((entry["action"] == "beep" || entry["action"] == "listen"));
        CHECK(entry.contains("observation"));
        CHECK(entry.contains("p"));
      }
    }
    ++count;
  }
  CHECK(count == 2);
}

TEST_CASE("the pairwise miss rate tracks two to the minus k") {
  const double rate = missrate_experiment(3, 20000, 123);
  const double exact = 1.0 / 8.0;
  const double sigma = std::sqrt(exact * (1.0 - exact) / 20000.0);
  CHECK(std::abs(rate - exact) < 4.0 * sigma);
  CHECK(missrate_experiment(3, 5000, 9) == missrate_experiment(3, 5000, 9));
  CHECK_THROWS_AS(missrate_experiment(3, 0, 1), std::invalid_argument);
}

TEST_CASE("a single beeper never trips the detection") {
  CHECK(missrate_false_positives(1, 5000, 17) == 0);
  CHECK(missrate_false_positives(6, 5000, 18) == 0);
}

TEST_CASE("chord endpoints survive t steps with probability two to the minus t") {
  const WheelSpec spec{2, 8, WheelParity::Odd};
  const WheelResult result = wheel_experiment(spec, 1, 20000, 3);
  CHECK(result.expected == 0.5);
  REQUIRE(result.spoke_survival.size() == 2);
  const double sigma = std::sqrt(0.25 / 20000.0);
  for (double survival : result.spoke_survival) {
    CHECK(std::abs(survival - 0.5) < 4.0 * sigma);
  }

  CHECK_THROWS_AS(wheel_experiment(spec, 8, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(wheel_experiment(spec, 9, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(wheel_experiment(spec, 1, 0, 0), std::invalid_argument);
}

TEST_CASE("transpile checks compare failures against the analytic bound") {
  ExperimentConfig config;
  config.graph.family = "er";
  config.graph.n = 16;
  config.graph.edge_prob = 0.2;
  config.algorithm = AlgorithmKind::Mis;
  config.trials = 50;
  config.master_seed = 6;
  config.transpile.enabled = true;
  config.transpile.explicit_k = 12;
  const TranspileCheckResult result = transpile_check(config);
  CHECK(result.sub_phases == 12);
  CHECK(result.trials == 50);
  const Graph g = build_graph(config.graph, config.master_seed);
  CHECK(result.analytic_bound ==
        transpile_failure_bound(16, max_degree(g), 12));
  CHECK(result.failure_rate <= result.analytic_bound + 0.05);

  config.transpile.enabled = false;
  CHECK_THROWS_AS(transpile_check(config), std::invalid_argument);
}
