// Batch harness for the self-consistent mean-field QAOA library:
//   scqaoa gen     instance generation and conversion
//   scqaoa run     experiment ensembles driven by a JSON config
//   scqaoa verify  release checks with per-criterion pass/fail lines
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "scqaoa/acceptance.hpp"
#include "scqaoa/experiments.hpp"
#include "scqaoa/instances.hpp"
#include "scqaoa/rng.hpp"

namespace fs = std::filesystem;

namespace {

int cmd_gen_sk(std::size_t n, std::uint64_t seed, bool keep_symmetry,
               const std::string& out) {
  scqaoa::IsingProblem problem = scqaoa::generate_sk(n, seed);
  if (!keep_symmetry) problem = scqaoa::break_z2_symmetry(problem).problem;
  scqaoa::save_problem(problem, out);
  std::cout << "wrote " << out << " (n=" << problem.n
            << ", basis=" << scqaoa::basis_name(problem.basis)
            << ", seed=" << seed << ")\n";
  return 0;
}

int cmd_gen_clique(const std::string& graph_path, double lambda,
                   const std::string& out) {
  const scqaoa::CliqueGraph graph = scqaoa::load_graph(graph_path);
  const scqaoa::IsingProblem problem =
      scqaoa::build_clique_problem(graph, lambda);
  scqaoa::save_problem(problem, out);
  std::cout << "wrote " << out << " (n=" << problem.n << ", lambda=" << lambda
            << ", from " << graph_path << ")\n";
  return 0;
}

int cmd_gen_graph(std::size_t n, double edge_prob, std::uint64_t seed,
                  const std::string& out) {
  const scqaoa::CliqueGraph graph =
      scqaoa::random_clique_graph(n, edge_prob, seed);
  scqaoa::save_graph(graph, out);
  std::cout << "wrote " << out << " (n=" << n << ", edge_prob=" << edge_prob
            << ", seed=" << seed << ")\n";
  return 0;
}

int cmd_run(const std::string& config_path, std::uint64_t seed, bool seed_set,
            std::size_t jobs, bool jobs_set, const std::string& out) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config '" << config_path << "'\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  scqaoa::ExperimentConfig config =
      scqaoa::parse_experiment_config(buffer.str());
  if (seed_set) config.seed = seed;
  if (jobs_set) config.jobs = jobs;
  if (!out.empty()) config.out = out;

  const scqaoa::ExperimentReport report = scqaoa::run_experiment(config);
  std::cout << "experiment " << scqaoa::kind_name(config.kind) << ": "
            << report.runs_ok << " runs ok, " << report.runs_failed
            << " failed\n";
  for (const std::string& error : report.errors)
    std::cerr << "  run error: " << error << '\n';
  for (const std::string& file : report.files) std::cout << "  " << file << '\n';
  return report.runs_failed > 0 ? 1 : 0;
}

int cmd_verify(const std::string& only, std::size_t jobs) {
  const auto results = scqaoa::run_acceptance(only, jobs, std::cout);
  std::size_t failed = 0;
  for (const auto& result : results)
    if (!result.pass) ++failed;
  if (results.empty()) {
    std::cerr << "no criterion matches filter '" << only << "'\n";
    return 2;
  }
  std::cout << (failed == 0 ? "all criteria passed"
                            : std::to_string(failed) + " criteria failed")
            << " (" << results.size() << " run)\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"self-consistent mean-field QAOA batch harness"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate instances and problem files");
  gen->require_subcommand(1);

  std::size_t sk_n = 32;
  std::uint64_t sk_seed = 1;
  bool sk_keep_symmetry = false;
  std::string sk_out = "problem.json";
  auto* gen_sk = gen->add_subcommand("sk", "Sherrington-Kirkpatrick instance");
  gen_sk->add_option("--n", sk_n, "variable count")->check(CLI::Range(std::size_t(2), std::size_t(4096)));
  gen_sk->add_option("--seed", sk_seed, "instance seed");
  gen_sk->add_flag("--keep-symmetry", sk_keep_symmetry,
                   "skip the Z2 symmetry-breaking substitution");
  gen_sk->add_option("--out", sk_out, "output problem file");

  std::string clique_graph = "graph.json";
  double clique_lambda = 2.0;
  std::string clique_out = "problem.json";
  auto* gen_clique =
      gen->add_subcommand("clique", "clique Hamiltonian from a graph file");
  gen_clique->add_option("--graph", clique_graph, "weighted graph file")->required();
  gen_clique->add_option("--lambda", clique_lambda, "penalty strength")
      ->check(CLI::NonNegativeNumber);
  gen_clique->add_option("--out", clique_out, "output problem file");

  std::size_t graph_n = 14;
  double graph_p = 0.5;
  std::uint64_t graph_seed = 1;
  std::string graph_out = "graph.json";
  auto* gen_graph = gen->add_subcommand("graph", "random weighted graph");
  gen_graph->add_option("--n", graph_n, "vertex count")->check(CLI::PositiveNumber);
  gen_graph->add_option("--edge-prob", graph_p, "edge probability")
      ->check(CLI::Range(0.0, 1.0));
  gen_graph->add_option("--seed", graph_seed, "graph seed");
  gen_graph->add_option("--out", graph_out, "output graph file");

  // run
  std::string run_config;
  std::uint64_t run_seed = 0;
  std::size_t run_jobs = 0;
  std::string run_out;
  auto* run = app.add_subcommand("run", "execute an experiment config");
  run->add_option("--config", run_config, "experiment config (JSON)")->required();
  auto* seed_opt = run->add_option("--seed", run_seed, "override the root seed");
  auto* jobs_opt = run->add_option("--jobs", run_jobs, "worker thread limit");
  run->add_option("--out", run_out, "override the output directory");

  // verify
  std::string verify_only;
  std::size_t verify_jobs = 0;
  auto* verify = app.add_subcommand("verify", "run the release criteria");
  verify->add_option("--only", verify_only, "filter criteria by name substring");
  verify->add_option("--jobs", verify_jobs, "worker thread limit");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_sk->parsed()) return cmd_gen_sk(sk_n, sk_seed, sk_keep_symmetry, sk_out);
    if (gen_clique->parsed())
      return cmd_gen_clique(clique_graph, clique_lambda, clique_out);
    if (gen_graph->parsed())
      return cmd_gen_graph(graph_n, graph_p, graph_seed, graph_out);
    if (run->parsed())
      return cmd_run(run_config, run_seed, seed_opt->count() > 0, run_jobs,
                     jobs_opt->count() > 0, run_out);
    if (verify->parsed()) return cmd_verify(verify_only, verify_jobs);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
  return 0;
}
