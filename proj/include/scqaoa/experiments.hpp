#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scqaoa/model.hpp"
#include "scqaoa/scmf.hpp"
#include "scqaoa/variational.hpp"

namespace scqaoa {

enum class ExperimentKind {
  Landscape,
  Concentration,
  Convergence,
  Multistart,
  ScalingK,
  ScalingP,
  Clique,
  Baseline,
};

std::string kind_name(ExperimentKind kind);
ExperimentKind kind_from_name(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::ScalingK;
  std::size_t n = 16;
  std::size_t k = 2;
  std::size_t p = 1;
  std::size_t ensemble = 1;
  std::uint64_t seed = 1;
  std::string out = "out";
  std::size_t jobs = 0;  // 0 -> hardware concurrency
  bool break_z2 = true;  // SK preparation

  ScmfConfig scmf;
  OptimizerConfig optimizer;

  // kind-specific knobs
  GridSpec grid;                     // landscape
  bool grid_set = false;
  std::size_t starts = 300;          // multistart
  std::vector<std::size_t> n_values; // scaling-k
  std::vector<std::size_t> k_values; // scaling-k
  std::vector<std::size_t> p_values; // scaling-p
  std::string graph_path;            // clique; empty -> random graphs
  std::size_t graph_n = 14;          // clique random graphs
  double edge_prob = 0.5;
  std::vector<double> lambdas{2.0};
  std::vector<double> eta_values{1.0};
  std::size_t shots = 2000;          // global samples per route
  std::size_t post_iters = 100;      // local-search iterations per sample
  std::size_t convergence_iters = 600;  // fixed trace length
  std::size_t fit_burn_in = 60;
};

// Parses the JSON text of a config file; unknown keys are rejected so typos
// fail loudly.
ExperimentConfig parse_experiment_config(const std::string& json_text);
std::string experiment_config_to_json(const ExperimentConfig& config);

// FNV-1a over the canonical config serialization; embedded in every CSV.
std::uint64_t config_hash(const ExperimentConfig& config);

struct ExperimentReport {
  std::vector<std::string> files;
  std::size_t runs_ok = 0;
  std::size_t runs_failed = 0;
  std::vector<std::string> errors;
};

// Executes the experiment over its ensemble and writes per-run CSVs plus an
// aggregate summary and a manifest into config.out. Partial failures are
// reported in the summary; the report carries them for the exit code.
ExperimentReport run_experiment(const ExperimentConfig& config);

// SK pipeline instance preparation: generate, then break the Z2 symmetry.
IsingProblem prepare_sk_instance(std::size_t n, bool break_z2,
                                 std::uint64_t seed);

}  // namespace scqaoa
