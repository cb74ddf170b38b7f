#include "scqaoa/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "scqaoa/experiments.hpp"
#include "scqaoa/instances.hpp"
#include "scqaoa/model.hpp"
#include "scqaoa/postprocess.hpp"
#include "scqaoa/qaoa.hpp"
#include "scqaoa/rng.hpp"
#include "scqaoa/scmf.hpp"
#include "scqaoa/variational.hpp"

namespace scqaoa {

namespace {

namespace fs = std::filesystem;
constexpr double kPi = 3.14159265358979323846;

void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& body) {
  std::size_t workers = jobs > 0 ? jobs : std::thread::hardware_concurrency();
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = cursor.fetch_add(1); i < count;
           i = cursor.fetch_add(1))
        body(i);
    });
  for (auto& thread : pool) thread.join();
}

std::string fmt(const char* pattern, auto... args) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), pattern, args...);
  return buffer;
}

// p=1 fixed-point right-hand side, used to check residuals of converged
// environments against the closed-form system.
std::vector<double> fixed_point_rhs(const IsingProblem& problem,
                                    const Partition& partition,
                                    const std::vector<double>& e, double gamma,
                                    double beta) {
  const std::size_t n = problem.n;
  std::vector<double> out(n);
  const double s2b = std::sin(2.0 * beta);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t gi = partition.group_of[i];
    double dressed = problem.h[i];
    double prod = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (partition.group_of[j] == gi)
        prod *= std::cos(2.0 * gamma * problem.w[i * n + j]);
      else
        dressed += problem.w[i * n + j] * e[j];
    }
    out[i] = -s2b * std::sin(2.0 * gamma * dressed) * prod;
  }
  return out;
}

// ------------------------------------------------------------- criterion 1

CriterionResult criterion_analytic_equivalence(std::size_t jobs) {
  CriterionResult result;
  result.id = 1;
  result.name = "analytic-simulator equivalence";
  const std::size_t trials = 200;
  std::vector<double> worst(trials, 0.0);
  parallel_for(trials, jobs, [&](std::size_t t) {
    Rng rng(derive_seed(20250801, "analytic", t));
    const std::size_t m = 1 + rng.uniform_index(12);
    SubproblemSpec spec;
    spec.basis = Basis::Spin;
    spec.indices.resize(m);
    spec.local_h.resize(m);
    spec.local_w.assign(m * m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
      spec.indices[a] = a;
      spec.local_h[a] = rng.uniform(-2.0, 2.0);
      for (std::size_t b = a + 1; b < m; ++b)
        spec.local_w[a * m + b] = spec.local_w[b * m + a] = rng.normal();
    }
    const double gamma = rng.uniform(-2.0, 2.0);
    const double beta = rng.uniform(-2.0, 2.0);
    const QaoaParams params{{gamma}, {beta}};
    const ExpectationSet simulated = expectations(run_qaoa(spec, params), spec);
    const std::vector<double> analytic = analytic_one_body_p1(spec, gamma, beta);
    for (std::size_t a = 0; a < m; ++a)
      worst[t] = std::max(worst[t],
                          std::fabs(analytic[a] - simulated.one_body[a]));
  });
  const double max_err = *std::max_element(worst.begin(), worst.end());
  result.pass = max_err <= 1e-10;
  result.detail = fmt("max elementwise error %.3e (tol 1e-10, %zu specs)",
                      max_err, trials);
  return result;
}

// ------------------------------------------------------------- criterion 2

CriterionResult criterion_factorized_oracle(std::size_t jobs) {
  CriterionResult result;
  result.id = 2;
  result.name = "factorized-energy oracle";
  const std::size_t trials = 50;
  const std::size_t n = 12;
  std::vector<double> errors(trials, 0.0);
  parallel_for(trials, jobs, [&](std::size_t t) {
    Rng rng(derive_seed(20250802, "factorized", t));
    IsingProblem problem = IsingProblem::zeros(n, Basis::Spin);
    for (std::size_t i = 0; i < n; ++i) {
      problem.h[i] = rng.normal();
      for (std::size_t j = i + 1; j < n; ++j)
        problem.set_coupling(i, j, rng.normal());
    }
    const std::size_t k = 2 + t % 3;
    const Partition partition =
        random_partition(n, k, derive_seed(20250802, "part", t));
    Environment env{Basis::Spin, {}};
    env.e.resize(n);
    for (double& value : env.e) value = rng.uniform(-1.0, 1.0);
    QaoaParams params;
    const std::size_t p = 1 + t % 2;
    for (std::size_t layer = 0; layer < p; ++layer) {
      params.gammas.push_back(rng.uniform(-1.0, 1.0));
      params.betas.push_back(rng.uniform(-1.0, 1.0));
    }

    std::vector<SubproblemState> states(k);
    std::vector<ExpectationSet> sets(k);
    for (std::size_t g = 0; g < k; ++g) {
      const SubproblemSpec spec = make_subproblem(problem, partition, env, g);
      states[g] = run_qaoa(spec, params);
      sets[g] = expectations(states[g], spec);
    }
    const double factorized = factorized_energy(problem, partition, sets);

    // tensor-product oracle over all 2^n outcomes
    double oracle = 0.0;
    std::vector<std::uint8_t> bits(n);
    for (std::size_t x = 0; x < (std::size_t(1) << n); ++x) {
      double probability = 1.0;
      for (std::size_t g = 0; g < k; ++g) {
        std::size_t local = 0;
        const auto& group = partition.groups[g];
        for (std::size_t a = 0; a < group.size(); ++a)
          local |= ((x >> group[a]) & 1u) << a;
        probability *= std::norm(states[g].amplitudes[local]);
      }
      if (probability == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i)
        bits[i] = static_cast<std::uint8_t>((x >> i) & 1u);
      oracle += probability * classical_energy(problem, bits);
    }
    errors[t] = std::fabs(factorized - oracle);
  });
  const double max_err = *std::max_element(errors.begin(), errors.end());
  result.pass = max_err <= 1e-9;
  result.detail = fmt("max |factorized - oracle| %.3e (tol 1e-9, %zu instances)",
                      max_err, trials);
  return result;
}

// ------------------------------------------------------------- criterion 3

CriterionResult criterion_selfconsistency_residual(std::size_t jobs) {
  CriterionResult result;
  result.id = 3;
  result.name = "self-consistency residual";
  const std::size_t trials = 30;
  std::vector<int> converged(trials, 0);
  std::vector<double> residuals(trials, 0.0);
  parallel_for(trials, jobs, [&](std::size_t t) {
    const IsingProblem problem =
        prepare_sk_instance(24, true, derive_seed(20250803, "inst", t));
    const Partition partition =
        random_partition(problem.n, 4, derive_seed(20250803, "part", t));
    const QaoaParams params = sk_heuristic_init(problem.n, 4, 1);
    ScmfConfig config;
    config.eps_env = 1e-4;
    config.eps_cost = 1e-4;
    config.rng_seed = derive_seed(20250803, "scmf", t);
    const ScmfResult run =
        run_self_consistency(problem, partition, params, config);
    converged[t] = run.trace.converged ? 1 : 0;
    if (run.trace.converged) {
      const std::vector<double> rhs = fixed_point_rhs(
          problem, partition, run.env.e, params.gammas[0], params.betas[0]);
      for (std::size_t i = 0; i < rhs.size(); ++i)
        residuals[t] = std::max(residuals[t], std::fabs(run.env.e[i] - rhs[i]));
    }
  });
  std::size_t count = 0;
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    if (converged[t]) {
      ++count;
      worst = std::max(worst, residuals[t]);
    }
  }
  const double fraction = static_cast<double>(count) / trials;
  result.pass = fraction >= 0.95 && worst <= 1e-3;
  result.detail = fmt("converged %zu/%zu (need >= 95%%), max residual %.3e (tol 1e-3)",
                      count, trials, worst);
  return result;
}

// ------------------------------------------------------------- criterion 4

CriterionResult criterion_parameter_concentration(std::size_t jobs) {
  CriterionResult result;
  result.id = 4;
  result.name = "parameter concentration";
  const std::size_t trials = 20;
  const std::size_t n = 32;
  std::vector<double> gammas(trials), betas(trials);
  parallel_for(trials, jobs, [&](std::size_t t) {
    const IsingProblem problem =
        prepare_sk_instance(n, true, derive_seed(20250804, "inst", t));
    const Partition partition =
        random_partition(problem.n, 1, derive_seed(20250804, "part", t));
    OptimizerConfig optimizer;
    optimizer.max_evals = 300;
    optimizer.tol_x = 1e-5;
    optimizer.tol_f = 1e-9;
    ScmfConfig scmf;
    scmf.rng_seed = derive_seed(20250804, "scmf", t);
    const OptimizeResult fit = optimize(problem, partition, 1, optimizer, scmf);
    gammas[t] = fit.params.gammas[0];
    betas[t] = fit.params.betas[0];
  });
  double mean_gamma = 0.0, mean_beta = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    mean_gamma += gammas[t];
    mean_beta += betas[t];
  }
  mean_gamma /= trials;
  mean_beta /= trials;
  const double beta_err = std::fabs(mean_beta - kPi / 8.0);
  const double gamma_err =
      std::fabs(mean_gamma * std::sqrt(static_cast<double>(n)) - 0.5);
  result.pass = beta_err <= 0.05 && gamma_err <= 0.1;
  result.detail = fmt(
      "mean beta %.4f (|d| %.4f <= 0.05), mean gamma*sqrt(n) %.4f (|d| %.4f <= 0.1)",
      mean_beta, beta_err, mean_gamma * std::sqrt(static_cast<double>(n)),
      gamma_err);
  return result;
}

// ------------------------------------------------------------- criterion 5

CriterionResult criterion_independent_scaling(std::size_t jobs) {
  CriterionResult result;
  result.id = 5;
  result.name = "independent-subproblem scaling";
  const std::size_t trials = 50;
  const std::size_t n = 64;
  std::vector<double> energy_k1(trials), energy_k4(trials);
  parallel_for(trials, jobs, [&](std::size_t t) {
    const IsingProblem problem =
        prepare_sk_instance(n, true, derive_seed(20250805, "inst", t));
    for (std::size_t k : {std::size_t(1), std::size_t(4)}) {
      const Partition partition = random_partition(
          problem.n, k, derive_seed(20250805, "part", t * 10 + k));
      OptimizerConfig optimizer;
      optimizer.max_evals = 200;
      ScmfConfig scmf;
      scmf.eta = 0.0;  // environment off: independent subproblems
      scmf.engine = EngineMode::AnalyticP1;
      scmf.rng_seed = derive_seed(20250805, "scmf", t * 10 + k);
      const OptimizeResult fit =
          optimize(problem, partition, 1, optimizer, scmf);
      (k == 1 ? energy_k1[t] : energy_k4[t]) = fit.energy;
    }
  });
  double mean_k1 = 0.0, mean_k4 = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    mean_k1 += energy_k1[t];
    mean_k4 += energy_k4[t];
  }
  const double ratio = mean_k4 / mean_k1;  // densities share the n^{3/2} scale
  result.pass = std::fabs(ratio - 0.5) <= 0.15 * 0.5;
  result.detail = fmt("density ratio K=4/K=1 = %.4f (target 0.5 within 15%%)",
                      ratio);
  return result;
}

// ------------------------------------------------------------- criterion 6

CriterionResult criterion_minimum_selection(std::size_t jobs) {
  CriterionResult result;
  result.id = 6;
  result.name = "minimum-energy selection";
  const std::size_t trials = 20;
  std::vector<int> within(trials, 0);
  std::vector<int> usable(trials, 0);
  parallel_for(trials, jobs, [&](std::size_t t) {
    const IsingProblem problem =
        prepare_sk_instance(24, true, derive_seed(20250806, "inst", t));
    const Partition partition =
        random_partition(problem.n, 4, derive_seed(20250806, "part", t));
    // angles fixed at their per-instance optimized values
    OptimizerConfig optimizer;
    optimizer.max_evals = 200;
    ScmfConfig scmf;
    scmf.rng_seed = derive_seed(20250806, "scmf", t);
    const OptimizeResult fit = optimize(problem, partition, 1, optimizer, scmf);
    const MultistartResult multistart = solve_fixed_point_multistart(
        problem, partition, fit.params.gammas[0], fit.params.betas[0], 300,
        derive_seed(20250806, "multi", t));
    if (multistart.solutions.empty()) return;
    usable[t] = 1;
    const double iterative =
        run_self_consistency(problem, partition, fit.params, scmf).energy;
    within[t] =
        iterative <= multistart.solutions.front().energy + 0.1 ? 1 : 0;
  });
  std::size_t hits = 0, total = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    if (!usable[t]) continue;
    ++total;
    hits += within[t];
  }
  const double fraction =
      total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
  result.pass = total == trials && fraction >= 0.80;
  result.detail = fmt("within 0.1 of multistart minimum in %zu/%zu instances (%.0f%%, need >= 80%%)",
                      hits, total, 100.0 * fraction);
  return result;
}

// ------------------------------------------------------------- criterion 7

CriterionResult criterion_depth_improvement(std::size_t jobs) {
  CriterionResult result;
  result.id = 7;
  result.name = "monotone depth improvement";
  const std::size_t trials = 15;
  const std::size_t n = 16;
  struct Cell {
    double energy[2][2];  // [k index][p index]
  };
  std::vector<Cell> cells(trials);
  parallel_for(trials, jobs, [&](std::size_t t) {
    const IsingProblem problem =
        prepare_sk_instance(n, true, derive_seed(20250807, "inst", t));
    const std::size_t ks[2] = {1, 2};
    for (std::size_t ki = 0; ki < 2; ++ki) {
      const Partition partition = random_partition(
          problem.n, ks[ki], derive_seed(20250807, "part", t * 10 + ki));
      for (std::size_t pi = 0; pi < 2; ++pi) {
        OptimizerConfig optimizer;
        optimizer.max_evals = pi == 0 ? 200 : 300;
        ScmfConfig scmf;
        scmf.rng_seed = derive_seed(20250807, "scmf", t * 10 + ki);
        const OptimizeResult fit =
            optimize(problem, partition, pi + 1, optimizer, scmf);
        cells[t].energy[ki][pi] = fit.energy;
      }
    }
  });
  bool pass = true;
  std::string detail;
  for (std::size_t ki = 0; ki < 2; ++ki) {
    std::vector<double> p1, p2;
    for (const Cell& cell : cells) {
      p1.push_back(cell.energy[ki][0]);
      p2.push_back(cell.energy[ki][1]);
    }
    double mean1 = 0.0, mean2 = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      mean1 += p1[t];
      mean2 += p2[t];
    }
    mean1 /= trials;
    mean2 /= trials;
    double ss = 0.0;
    for (double value : p1) ss += (value - mean1) * (value - mean1);
    const double se = std::sqrt(ss / (trials - 1) / trials);
    const bool ok = mean2 <= mean1 - se;
    pass = pass && ok;
    detail += fmt("K=%zu: p1 %.3f, p2 %.3f, se %.3f%s%s", ki == 0 ? 1 : 2,
                  mean1, mean2, se, ok ? "" : " (violated)",
                  ki == 0 ? "; " : "");
  }
  result.pass = pass;
  result.detail = detail;
  return result;
}

// ------------------------------------------------------------- criterion 8

CriterionResult criterion_clique_pipeline(std::size_t jobs) {
  CriterionResult result;
  result.id = 8;
  result.name = "clique pipeline validity";
  const std::size_t graphs = 20;
  const std::size_t shots = 1500;
  struct GraphOutcome {
    bool all_valid = true;
    bool reaches_optimum = false;
    double mean_raw_scmf = 0.0;
    double mean_raw_indep = 0.0;
    double mean_raw_random = 0.0;
  };
  std::vector<GraphOutcome> outcomes(graphs);

  parallel_for(graphs, jobs, [&](std::size_t gi) {
    GraphOutcome& outcome = outcomes[gi];
    const CliqueGraph graph =
        random_clique_graph(14, 0.5, derive_seed(20250808, "graph", gi));
    double max_h = 0.0;
    for (double weight : graph.weights) max_h = std::max(max_h, weight);
    const double lambda = 2.0 * max_h + 0.5;
    const IsingProblem problem = build_clique_problem(graph, lambda);
    const Partition partition =
        random_partition(graph.n, 2, derive_seed(20250808, "part", gi));

    const auto [gs_bits, gs_energy] = brute_force(problem);
    const double best_weight = clique_weight(graph, gs_bits);

    const auto run_route = [&](double eta, std::uint64_t salt) {
      ScmfConfig scmf;
      scmf.eta = eta;
      scmf.init_env = EnvInit::Half;
      scmf.rng_seed = derive_seed(20250808, "scmf", gi * 10 + salt);
      OptimizerConfig optimizer;
      optimizer.max_evals = 150;
      const OptimizeResult fit = optimize(problem, partition, 1, optimizer, scmf);
      const ScmfResult run =
          run_self_consistency(problem, partition, fit.params, scmf);
      SolutionPool pool;
      pool.partition = partition;
      pool.samples.resize(partition.k());
      const Environment dressed = scale_environment(run.env, eta);
      for (std::size_t g = 0; g < partition.k(); ++g) {
        const SubproblemSpec spec = make_subproblem(problem, partition, dressed, g);
        pool.samples[g] = sample(run_qaoa(spec, fit.params), shots,
                                 derive_seed(20250808, "shots", gi * 100 + salt * 10 + g));
      }
      return concatenate_global(pool, shots,
                                derive_seed(20250808, "concat", gi * 10 + salt));
    };

    const auto scmf_samples = run_route(1.0, 1);
    const auto indep_samples = run_route(0.0, 2);
    Rng rng(derive_seed(20250808, "rand", gi));
    std::vector<std::vector<std::uint8_t>> random_samples(shots);
    for (auto& bits : random_samples) {
      bits.resize(graph.n);
      for (auto& bit : bits) bit = static_cast<std::uint8_t>(rng.uniform_index(2));
    }

    double best_post = 0.0;
    const auto evaluate = [&](const std::vector<std::vector<std::uint8_t>>& samples,
                              std::uint64_t salt, bool track_best) {
      double total_raw = 0.0;
      for (std::size_t s = 0; s < samples.size(); ++s) {
        total_raw += classical_energy(problem, samples[s]);
        const auto repaired = greedy_clique_repair(
            graph, samples[s], derive_seed(20250808, "repair", gi * 10000 + salt * 2000 + s));
        const auto improved = clique_local_search(
            graph, repaired, 100,
            derive_seed(20250808, "search", gi * 10000 + salt * 2000 + s));
        if (!is_clique(graph, improved)) outcome.all_valid = false;
        if (track_best)
          best_post = std::max(best_post, clique_weight(graph, improved));
      }
      return total_raw / static_cast<double>(samples.size());
    };
    outcome.mean_raw_scmf = evaluate(scmf_samples, 0, true);
    outcome.mean_raw_indep = evaluate(indep_samples, 1, false);
    outcome.mean_raw_random = evaluate(random_samples, 2, false);
    outcome.reaches_optimum = best_post >= 0.99 * best_weight;
  });

  bool all_valid = true;
  std::size_t optimum_hits = 0;
  double scmf_mean = 0.0, indep_mean = 0.0, random_mean = 0.0;
  for (const GraphOutcome& outcome : outcomes) {
    all_valid = all_valid && outcome.all_valid;
    optimum_hits += outcome.reaches_optimum ? 1 : 0;
    scmf_mean += outcome.mean_raw_scmf;
    indep_mean += outcome.mean_raw_indep;
    random_mean += outcome.mean_raw_random;
  }
  scmf_mean /= graphs;
  indep_mean /= graphs;
  random_mean /= graphs;
  const bool ordering = scmf_mean <= indep_mean && indep_mean <= random_mean;
  result.pass = all_valid && optimum_hits >= 18 && ordering;
  result.detail =
      fmt("valid cliques %s; >=99%% optimum in %zu/20 (need 18); mean raw "
          "scmf %.2f <= indep %.2f <= random %.2f %s",
          all_valid ? "100%" : "VIOLATED", optimum_hits, scmf_mean, indep_mean,
          random_mean, ordering ? "" : "(ordering violated)");
  return result;
}

// ------------------------------------------------------------- criterion 9

CriterionResult criterion_convergence_shape(std::size_t jobs) {
  CriterionResult result;
  result.id = 9;
  result.name = "exponential convergence shape";
  const std::size_t trials = 20;
  std::vector<ScmfTrace> traces(trials);
  parallel_for(trials, jobs, [&](std::size_t t) {
    const IsingProblem problem =
        prepare_sk_instance(32, true, derive_seed(20250809, "inst", t));
    const Partition partition =
        random_partition(problem.n, 4, derive_seed(20250809, "part", t));
    const QaoaParams params = sk_heuristic_init(problem.n, 4, 1);
    ScmfConfig config;
    config.eps_env = 1e-15;
    config.eps_cost = 1e-15;
    config.max_iters = 600;
    // round-robin keeps the per-iteration metric free of the exact zeros
    // that uniform selection produces whenever it repeats a subproblem
    config.selection = Selection::RoundRobin;
    config.rng_seed = derive_seed(20250809, "scmf", t);
    traces[t] = run_self_consistency(problem, partition, params, config).trace;
  });
  RateFitOptions options;
  options.burn_in = 60;
  const RateFit fit = fit_convergence_rate(traces, options);
  result.pass = fit.rate > 0.0 && fit.r_squared >= 0.9;
  result.detail = fmt("rate f %.5f (> 0), R^2 %.4f (>= 0.9), window %zu, floored %zu",
                      fit.rate, fit.r_squared, fit.window, fit.floored);
  return result;
}

// ------------------------------------------------------------ criterion 10

std::uint64_t file_fingerprint(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  char c;
  while (in.get(c)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ull;
  }
  return hash;
}

CriterionResult criterion_determinism(std::size_t jobs) {
  CriterionResult result;
  result.id = 10;
  result.name = "determinism";
  const fs::path base = fs::temp_directory_path() / "scqaoa-acceptance";
  fs::remove_all(base);

  bool identical = true;
  std::string detail;

  const auto check = [&](ExperimentConfig config, const std::string& label) {
    config.jobs = jobs;
    config.out = (base / label).string();
    ExperimentReport first = run_experiment(config);
    std::vector<std::pair<std::string, std::uint64_t>> snapshot;
    for (const auto& file : first.files)
      if (file.ends_with(".csv")) snapshot.emplace_back(file, file_fingerprint(file));
    ExperimentReport second = run_experiment(config);
    (void)second;
    std::size_t matched = 0;
    for (const auto& [file, hash] : snapshot) {
      if (file_fingerprint(file) == hash) ++matched;
      else identical = false;
    }
    detail += fmt("%s %zu/%zu CSVs identical; ", label.c_str(), matched,
                  snapshot.size());
  };

  ExperimentConfig scaling;
  scaling.kind = ExperimentKind::ScalingK;
  scaling.n_values = {10};
  scaling.k_values = {2};
  scaling.ensemble = 3;
  scaling.seed = 77;
  check(scaling, "scaling");

  ExperimentConfig clique;
  clique.kind = ExperimentKind::Clique;
  clique.graph_n = 8;
  clique.k = 2;
  clique.ensemble = 1;
  clique.shots = 200;
  clique.post_iters = 30;
  clique.seed = 78;
  check(clique, "clique");

  fs::remove_all(base);
  result.pass = identical;
  result.detail = detail;
  return result;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& only,
                                            std::size_t jobs,
                                            std::ostream& log) {
  using Runner = CriterionResult (*)(std::size_t);
  struct Entry {
    const char* name;
    Runner runner;
  };
  const Entry entries[] = {
      {"analytic-simulator equivalence", criterion_analytic_equivalence},
      {"factorized-energy oracle", criterion_factorized_oracle},
      {"self-consistency residual", criterion_selfconsistency_residual},
      {"parameter concentration", criterion_parameter_concentration},
      {"independent-subproblem scaling", criterion_independent_scaling},
      {"minimum-energy selection", criterion_minimum_selection},
      {"monotone depth improvement", criterion_depth_improvement},
      {"clique pipeline validity", criterion_clique_pipeline},
      {"exponential convergence shape", criterion_convergence_shape},
      {"determinism", criterion_determinism},
  };

  std::vector<CriterionResult> results;
  for (const Entry& entry : entries) {
    if (!only.empty() && std::string(entry.name).find(only) == std::string::npos)
      continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result = entry.runner(jobs);
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    log << (result.pass ? "PASS" : "FAIL") << "  criterion " << result.id
        << ": " << result.name << " - " << result.detail << " ["
        << fmt("%.1f", result.seconds) << "s]" << std::endl;
    results.push_back(result);
  }
  return results;
}

}  // namespace scqaoa
