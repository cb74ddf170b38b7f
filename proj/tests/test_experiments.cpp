#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "scqaoa/acceptance.hpp"
#include "scqaoa/experiments.hpp"

using namespace scqaoa;
namespace fs = std::filesystem;

namespace {

struct Csv {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Csv read_csv(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  Csv csv;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      csv.comments.push_back(line);
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream stream(line);
    std::string cell;
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    if (!header_seen) {
      csv.header = cells;
      header_seen = true;
    } else {
      csv.rows.push_back(cells);
    }
  }
  return csv;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path scratch_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "scqaoa-tests" / name;
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing") {
  const std::string text = R"({
    "kind": "scaling-k",
    "n": 12,
    "ensemble": 4,
    "seed": 9,
    "k_values": [1, 2],
    "scmf": {"eps_env": 1e-3, "eta": 0.5, "init_env": "half"},
    "optimizer": {"max_evals": 50, "init": "sk-heuristic"}
  })";
  const ExperimentConfig config = parse_experiment_config(text);
  CHECK(config.kind == ExperimentKind::ScalingK);
  CHECK(config.n == 12);
  CHECK(config.ensemble == 4);
  CHECK(config.k_values == std::vector<std::size_t>{1, 2});
  CHECK(config.scmf.eps_env == 1e-3);
  CHECK(config.scmf.eta == 0.5);
  CHECK(config.scmf.init_env == EnvInit::Half);
  CHECK(config.optimizer.max_evals == 50);

  CHECK_THROWS_AS(parse_experiment_config("{\"kind\": \"bogus\"}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_experiment_config("{\"kind\": \"baseline\", \"typo\": 1}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_experiment_config("not json"), std::invalid_argument);
  CHECK_THROWS_AS(
      parse_experiment_config(
          "{\"kind\": \"clique\", \"graph\": \"/does/not/exist.json\"}"),
      std::invalid_argument);
}

TEST_CASE("experiment kind names round-trip") {
  for (ExperimentKind kind :
       {ExperimentKind::Landscape, ExperimentKind::Concentration,
        ExperimentKind::Convergence, ExperimentKind::Multistart,
        ExperimentKind::ScalingK, ExperimentKind::ScalingP,
        ExperimentKind::Clique, ExperimentKind::Baseline})
    CHECK(kind_from_name(kind_name(kind)) == kind);
}

TEST_CASE("config hashes separate configs") {
  ExperimentConfig a;
  ExperimentConfig b;
  CHECK(config_hash(a) == config_hash(b));
  b.seed = a.seed + 1;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("scaling-k runs write provenance-stamped tables") {
  ExperimentConfig config;
  config.kind = ExperimentKind::ScalingK;
  config.n_values = {10};
  config.k_values = {1, 2};
  config.ensemble = 2;
  config.p = 1;
  config.seed = 11;
  config.jobs = 2;
  config.optimizer.max_evals = 60;
  config.out = scratch_dir("scaling").string();

  const ExperimentReport report = run_experiment(config);
  CHECK(report.runs_failed == 0);
  CHECK(report.runs_ok == 4);

  const Csv runs = read_csv(fs::path(config.out) / "runs.csv");
  CHECK(runs.header.front() == "n");
  CHECK(runs.rows.size() == 4);
  REQUIRE(runs.comments.size() == 2);
  CHECK(runs.comments[0].rfind("# config_hash=0x", 0) == 0);
  CHECK(runs.comments[1] == "# root_seed=11");

  const Csv summary = read_csv(fs::path(config.out) / "summary.csv");
  CHECK(summary.rows.size() == 2);

  // identical reruns produce identical bytes
  const std::string before = slurp(fs::path(config.out) / "runs.csv");
  run_experiment(config);
  CHECK(slurp(fs::path(config.out) / "runs.csv") == before);
  fs::remove_all(config.out);
}

TEST_CASE("landscape experiment writes the full grid") {
  ExperimentConfig config;
  config.kind = ExperimentKind::Landscape;
  config.n = 8;
  config.k = 2;
  config.seed = 12;
  config.grid = {0.05, 0.3, 3, 0.2, 1.2, 3};
  config.grid_set = true;
  config.out = scratch_dir("landscape").string();
  run_experiment(config);
  const Csv grid = read_csv(fs::path(config.out) / "landscape.csv");
  CHECK(grid.rows.size() == 9);
  fs::remove_all(config.out);
}

TEST_CASE("convergence experiment fits a decay rate") {
  ExperimentConfig config;
  config.kind = ExperimentKind::Convergence;
  config.n = 12;
  config.k = 3;
  config.ensemble = 3;
  config.seed = 13;
  config.jobs = 2;
  config.convergence_iters = 90;
  config.fit_burn_in = 10;
  config.out = scratch_dir("convergence").string();
  const ExperimentReport report = run_experiment(config);
  CHECK(report.runs_failed == 0);
  const Csv rate = read_csv(fs::path(config.out) / "rate.csv");
  REQUIRE(rate.rows.size() == 1);
  CHECK(std::stod(rate.rows[0][0]) > 0.0);
  const Csv typ = read_csv(fs::path(config.out) / "typ.csv");
  CHECK(typ.rows.size() == 90);
  fs::remove_all(config.out);
}

TEST_CASE("multistart experiment reports iterative placement") {
  ExperimentConfig config;
  config.kind = ExperimentKind::Multistart;
  config.n = 10;
  config.k = 2;
  config.ensemble = 2;
  config.starts = 25;
  config.seed = 14;
  config.jobs = 2;
  config.optimizer.max_evals = 60;
  config.out = scratch_dir("multistart").string();
  const ExperimentReport report = run_experiment(config);
  CHECK(report.runs_failed == 0);
  const Csv aggregate = read_csv(fs::path(config.out) / "aggregate.csv");
  REQUIRE(aggregate.rows.size() == 1);
  CHECK(std::stod(aggregate.rows[0][1]) >= 0.0);
  fs::remove_all(config.out);
}

TEST_CASE("clique experiment validates every post-processed sample") {
  ExperimentConfig config;
  config.kind = ExperimentKind::Clique;
  config.graph_n = 8;
  config.k = 2;
  config.ensemble = 1;
  config.shots = 120;
  config.post_iters = 30;
  config.seed = 15;
  config.eta_values = {1.0, 0.0};
  config.optimizer.max_evals = 40;
  config.out = scratch_dir("clique").string();
  const ExperimentReport report = run_experiment(config);
  CHECK(report.runs_failed == 0);
  const Csv summary = read_csv(fs::path(config.out) / "summary.csv");
  REQUIRE(summary.rows.size() == 3);  // eta=1, eta=0, random
  for (const auto& row : summary.rows) {
    CHECK(row[6] == "1");  // valid_fraction
    CHECK(std::stod(row[9]) >= 0.99);  // weight_ratio on an 8-vertex graph
  }
  fs::remove_all(config.out);
}

TEST_CASE("baseline experiment orders methods sanely") {
  ExperimentConfig config;
  config.kind = ExperimentKind::Baseline;
  config.n = 10;
  config.ensemble = 2;
  config.seed = 16;
  config.out = scratch_dir("baseline").string();
  const ExperimentReport report = run_experiment(config);
  CHECK(report.runs_failed == 0);
  const Csv rows = read_csv(fs::path(config.out) / "baselines.csv");
  double brute = 0.0, sa = 0.0;
  for (const auto& row : rows.rows) {
    if (row[0] != "0") continue;
    if (row[1] == "brute-force") brute = std::stod(row[2]);
    if (row[1] == "simulated-annealing") sa = std::stod(row[2]);
  }
  CHECK(brute <= sa + 1e-9);
  fs::remove_all(config.out);
}

TEST_CASE("acceptance filtering runs only matching criteria") {
  std::ostringstream log;
  const auto results = run_acceptance("analytic-simulator", 2, log);
  REQUIRE(results.size() == 1);
  CHECK(results[0].id == 1);
  CHECK(results[0].pass);
  CHECK(log.str().find("criterion 1") != std::string::npos);

  const auto none = run_acceptance("no-such-criterion", 2, log);
  CHECK(none.empty());
}

TEST_CASE("scaling-p experiment emits one summary row per depth") {
  ExperimentConfig config;
  config.kind = ExperimentKind::ScalingP;
  config.n = 8;
  config.k = 1;
  config.p_values = {1, 2};
  config.ensemble = 2;
  config.seed = 17;
  config.jobs = 2;
  config.optimizer.max_evals = 80;
  config.out = scratch_dir("scalingp").string();
  const ExperimentReport report = run_experiment(config);
  CHECK(report.runs_failed == 0);
  const Csv summary = read_csv(fs::path(config.out) / "summary.csv");
  CHECK(summary.rows.size() == 2);
  fs::remove_all(config.out);
}
