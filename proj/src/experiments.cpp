#include "scqaoa/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "scqaoa/instances.hpp"
#include "scqaoa/postprocess.hpp"
#include "scqaoa/rng.hpp"

namespace scqaoa {

using nlohmann::json;
namespace fs = std::filesystem;

std::string kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Landscape: return "landscape";
    case ExperimentKind::Concentration: return "concentration";
    case ExperimentKind::Convergence: return "convergence";
    case ExperimentKind::Multistart: return "multistart";
    case ExperimentKind::ScalingK: return "scaling-k";
    case ExperimentKind::ScalingP: return "scaling-p";
    case ExperimentKind::Clique: return "clique";
    case ExperimentKind::Baseline: return "baseline";
  }
  return "unknown";
}

ExperimentKind kind_from_name(const std::string& name) {
  for (ExperimentKind kind :
       {ExperimentKind::Landscape, ExperimentKind::Concentration,
        ExperimentKind::Convergence, ExperimentKind::Multistart,
        ExperimentKind::ScalingK, ExperimentKind::ScalingP,
        ExperimentKind::Clique, ExperimentKind::Baseline}) {
    if (kind_name(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

namespace {

const char* env_init_name(EnvInit init) {
  switch (init) {
    case EnvInit::Zero: return "zero";
    case EnvInit::Half: return "half";
    case EnvInit::Custom: return "custom";
  }
  return "zero";
}

const char* selection_name(Selection selection) {
  return selection == Selection::RoundRobin ? "round-robin" : "random";
}

const char* engine_name(EngineMode mode) {
  switch (mode) {
    case EngineMode::Auto: return "auto";
    case EngineMode::StateVector: return "state-vector";
    case EngineMode::AnalyticP1: return "analytic-p1";
  }
  return "auto";
}

const char* init_strategy_name(InitStrategy init) {
  switch (init) {
    case InitStrategy::SkHeuristic: return "sk-heuristic";
    case InitStrategy::Custom: return "custom";
    case InitStrategy::Grid: return "grid";
  }
  return "sk-heuristic";
}

void check_keys(const json& object, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& item : object.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) { known = true; break; }
    if (!known)
      throw std::invalid_argument("config: unknown key '" + item.key() +
                                  "' in " + where);
  }
}

ScmfConfig parse_scmf(const json& object) {
  check_keys(object,
             {"eps_env", "eps_cost", "max_iters", "eta", "init_env",
              "selection", "engine", "qubit_cap", "rng_seed"},
             "scmf");
  ScmfConfig scmf;
  scmf.eps_env = object.value("eps_env", scmf.eps_env);
  scmf.eps_cost = object.value("eps_cost", scmf.eps_cost);
  scmf.max_iters = object.value("max_iters", scmf.max_iters);
  scmf.eta = object.value("eta", scmf.eta);
  scmf.rng_seed = object.value("rng_seed", scmf.rng_seed);
  scmf.qubit_cap = object.value("qubit_cap", scmf.qubit_cap);
  if (object.contains("init_env")) {
    const auto& init = object.at("init_env");
    if (init.is_array()) {
      scmf.init_env = EnvInit::Custom;
      scmf.custom_init = init.get<std::vector<double>>();
    } else {
      const std::string name = init.get<std::string>();
      if (name == "zero") scmf.init_env = EnvInit::Zero;
      else if (name == "half") scmf.init_env = EnvInit::Half;
      else throw std::invalid_argument("config: init_env must be zero, half, or an array");
    }
  }
  if (object.contains("selection")) {
    const std::string name = object.at("selection").get<std::string>();
    if (name == "random") scmf.selection = Selection::UniformRandom;
    else if (name == "round-robin") scmf.selection = Selection::RoundRobin;
    else throw std::invalid_argument("config: selection must be random or round-robin");
  }
  if (object.contains("engine")) {
    const std::string name = object.at("engine").get<std::string>();
    if (name == "auto") scmf.engine = EngineMode::Auto;
    else if (name == "state-vector") scmf.engine = EngineMode::StateVector;
    else if (name == "analytic-p1") scmf.engine = EngineMode::AnalyticP1;
    else throw std::invalid_argument("config: engine must be auto, state-vector, or analytic-p1");
  }
  return scmf;
}

OptimizerConfig parse_optimizer(const json& object) {
  check_keys(object,
             {"max_evals", "simplex_scale", "tol_x", "tol_f", "init",
              "grid_steps"},
             "optimizer");
  OptimizerConfig optimizer;
  optimizer.max_evals = object.value("max_evals", optimizer.max_evals);
  optimizer.simplex_scale = object.value("simplex_scale", optimizer.simplex_scale);
  optimizer.tol_x = object.value("tol_x", optimizer.tol_x);
  optimizer.tol_f = object.value("tol_f", optimizer.tol_f);
  optimizer.grid_steps = object.value("grid_steps", optimizer.grid_steps);
  if (object.contains("init")) {
    const auto& init = object.at("init");
    if (init.is_object()) {
      optimizer.init = InitStrategy::Custom;
      optimizer.custom_init.gammas = init.at("gammas").get<std::vector<double>>();
      optimizer.custom_init.betas = init.at("betas").get<std::vector<double>>();
    } else {
      const std::string name = init.get<std::string>();
      if (name == "sk-heuristic") optimizer.init = InitStrategy::SkHeuristic;
      else if (name == "grid") optimizer.init = InitStrategy::Grid;
      else throw std::invalid_argument("config: optimizer init must be sk-heuristic, grid, or {gammas, betas}");
    }
  }
  return optimizer;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("config: parse failure: ") + err.what());
  }
  check_keys(doc,
             {"kind", "n", "k", "p", "ensemble", "seed", "out", "jobs",
              "break_z2", "scmf", "optimizer", "grid", "starts", "n_values",
              "k_values", "p_values", "graph", "graph_n", "edge_prob",
              "lambdas", "eta_values", "shots", "post_iters",
              "convergence_iters", "fit_burn_in"},
             "top level");
  ExperimentConfig config;
  config.kind = kind_from_name(doc.at("kind").get<std::string>());
  config.n = doc.value("n", config.n);
  config.k = doc.value("k", config.k);
  config.p = doc.value("p", config.p);
  config.ensemble = doc.value("ensemble", config.ensemble);
  config.seed = doc.value("seed", config.seed);
  config.out = doc.value("out", config.out);
  config.jobs = doc.value("jobs", config.jobs);
  config.break_z2 = doc.value("break_z2", config.break_z2);
  if (doc.contains("scmf")) config.scmf = parse_scmf(doc.at("scmf"));
  if (doc.contains("optimizer"))
    config.optimizer = parse_optimizer(doc.at("optimizer"));
  if (doc.contains("grid")) {
    const auto& grid = doc.at("grid");
    check_keys(grid,
               {"gamma_min", "gamma_max", "gamma_steps", "beta_min",
                "beta_max", "beta_steps"},
               "grid");
    config.grid.gamma_min = grid.value("gamma_min", config.grid.gamma_min);
    config.grid.gamma_max = grid.value("gamma_max", config.grid.gamma_max);
    config.grid.gamma_steps = grid.value("gamma_steps", config.grid.gamma_steps);
    config.grid.beta_min = grid.value("beta_min", config.grid.beta_min);
    config.grid.beta_max = grid.value("beta_max", config.grid.beta_max);
    config.grid.beta_steps = grid.value("beta_steps", config.grid.beta_steps);
    config.grid_set = true;
  }
  config.starts = doc.value("starts", config.starts);
  if (doc.contains("n_values"))
    config.n_values = doc.at("n_values").get<std::vector<std::size_t>>();
  if (doc.contains("k_values"))
    config.k_values = doc.at("k_values").get<std::vector<std::size_t>>();
  if (doc.contains("p_values"))
    config.p_values = doc.at("p_values").get<std::vector<std::size_t>>();
  config.graph_path = doc.value("graph", config.graph_path);
  config.graph_n = doc.value("graph_n", config.graph_n);
  config.edge_prob = doc.value("edge_prob", config.edge_prob);
  if (doc.contains("lambdas"))
    config.lambdas = doc.at("lambdas").get<std::vector<double>>();
  if (doc.contains("eta_values"))
    config.eta_values = doc.at("eta_values").get<std::vector<double>>();
  config.shots = doc.value("shots", config.shots);
  config.post_iters = doc.value("post_iters", config.post_iters);
  config.convergence_iters = doc.value("convergence_iters", config.convergence_iters);
  config.fit_burn_in = doc.value("fit_burn_in", config.fit_burn_in);

  if (config.ensemble < 1)
    throw std::invalid_argument("config: ensemble must be >= 1");
  if (!config.graph_path.empty() && !fs::exists(config.graph_path))
    throw std::invalid_argument("config: graph file '" + config.graph_path +
                                "' does not exist");
  return config;
}

std::string experiment_config_to_json(const ExperimentConfig& config) {
  json scmf{{"eps_env", config.scmf.eps_env},
            {"eps_cost", config.scmf.eps_cost},
            {"max_iters", config.scmf.max_iters},
            {"eta", config.scmf.eta},
            {"selection", selection_name(config.scmf.selection)},
            {"engine", engine_name(config.scmf.engine)},
            {"qubit_cap", config.scmf.qubit_cap},
            {"rng_seed", config.scmf.rng_seed}};
  if (config.scmf.init_env == EnvInit::Custom)
    scmf["init_env"] = config.scmf.custom_init;
  else
    scmf["init_env"] = env_init_name(config.scmf.init_env);

  json optimizer{{"max_evals", config.optimizer.max_evals},
                 {"simplex_scale", config.optimizer.simplex_scale},
                 {"tol_x", config.optimizer.tol_x},
                 {"tol_f", config.optimizer.tol_f},
                 {"grid_steps", config.optimizer.grid_steps}};
  if (config.optimizer.init == InitStrategy::Custom)
    optimizer["init"] = json{{"gammas", config.optimizer.custom_init.gammas},
                             {"betas", config.optimizer.custom_init.betas}};
  else
    optimizer["init"] = init_strategy_name(config.optimizer.init);

  json doc{{"kind", kind_name(config.kind)},
           {"n", config.n},
           {"k", config.k},
           {"p", config.p},
           {"ensemble", config.ensemble},
           {"seed", config.seed},
           {"out", config.out},
           {"jobs", config.jobs},
           {"break_z2", config.break_z2},
           {"scmf", scmf},
           {"optimizer", optimizer},
           {"starts", config.starts},
           {"graph", config.graph_path},
           {"graph_n", config.graph_n},
           {"edge_prob", config.edge_prob},
           {"lambdas", config.lambdas},
           {"eta_values", config.eta_values},
           {"shots", config.shots},
           {"post_iters", config.post_iters},
           {"convergence_iters", config.convergence_iters},
           {"fit_burn_in", config.fit_burn_in}};
  if (config.grid_set)
    doc["grid"] = json{{"gamma_min", config.grid.gamma_min},
                       {"gamma_max", config.grid.gamma_max},
                       {"gamma_steps", config.grid.gamma_steps},
                       {"beta_min", config.grid.beta_min},
                       {"beta_max", config.grid.beta_max},
                       {"beta_steps", config.grid.beta_steps}};
  if (!config.n_values.empty()) doc["n_values"] = config.n_values;
  if (!config.k_values.empty()) doc["k_values"] = config.k_values;
  if (!config.p_values.empty()) doc["p_values"] = config.p_values;
  return doc.dump(2);
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  const std::string text = experiment_config_to_json(config);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ull;
  }
  return hash;
}

IsingProblem prepare_sk_instance(std::size_t n, bool break_z2,
                                 std::uint64_t seed) {
  IsingProblem problem = generate_sk(n, seed);
  if (break_z2) return break_z2_symmetry(problem).problem;
  return problem;
}

namespace {

std::string format_value(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

class CsvFile {
 public:
  CsvFile(const fs::path& path, std::uint64_t hash, std::uint64_t seed,
          const std::string& header)
      : out_(path) {
    if (!out_) throw std::runtime_error("cannot write '" + path.string() + "'");
    char line[64];
    std::snprintf(line, sizeof(line), "# config_hash=0x%016llx",
                  static_cast<unsigned long long>(hash));
    out_ << line << '\n';
    out_ << "# root_seed=" << seed << '\n';
    out_ << header << '\n';
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

std::string str(std::size_t value) { return std::to_string(value); }

struct MeanStats {
  double mean = 0.0;
  double se = 0.0;
  std::size_t count = 0;
};

MeanStats mean_and_se(const std::vector<double>& values) {
  MeanStats stats;
  stats.count = values.size();
  if (values.empty()) return stats;
  double sum = 0.0;
  for (double value : values) sum += value;
  stats.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double value : values)
      ss += (value - stats.mean) * (value - stats.mean);
    stats.se = std::sqrt(ss / static_cast<double>(values.size() - 1) /
                         static_cast<double>(values.size()));
  }
  return stats;
}

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
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = cursor.fetch_add(1); i < count;
           i = cursor.fetch_add(1))
        body(i);
    });
  }
  for (auto& thread : pool) thread.join();
}

struct Harness {
  const ExperimentConfig& config;
  std::uint64_t hash;
  fs::path dir;
  ExperimentReport report;

  explicit Harness(const ExperimentConfig& cfg)
      : config(cfg), hash(config_hash(cfg)), dir(cfg.out) {
    fs::create_directories(dir);
  }

  CsvFile csv(const std::string& name, const std::string& header) {
    report.files.push_back((dir / name).string());
    return CsvFile(dir / name, hash, config.seed, header);
  }

  ScmfConfig scmf_for(std::uint64_t instance) const {
    ScmfConfig scmf = config.scmf;
    scmf.rng_seed = derive_seed(config.seed, "scmf", instance);
    return scmf;
  }

  void finish() {
    json manifest{{"kind", kind_name(config.kind)},
                  {"config_hash", format_hash()},
                  {"root_seed", config.seed},
                  {"runs_ok", report.runs_ok},
                  {"runs_failed", report.runs_failed},
                  {"errors", report.errors},
                  {"files", report.files},
                  {"config", json::parse(experiment_config_to_json(config))}};
    const fs::path path = dir / "manifest.json";
    std::ofstream out(path);
    out << manifest.dump(2) << '\n';
    report.files.push_back(path.string());
  }

  std::string format_hash() const {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "0x%016llx",
                  static_cast<unsigned long long>(hash));
    return buffer;
  }
};

double density_scale(std::size_t n_original) {
  return std::pow(static_cast<double>(n_original), 1.5);
}

// ---------------------------------------------------------------- landscape

void run_landscape(Harness& h) {
  const auto& config = h.config;
  const IsingProblem problem = prepare_sk_instance(
      config.n, config.break_z2, derive_seed(config.seed, "instance", 0));
  const Partition partition = random_partition(
      problem.n, config.k, derive_seed(config.seed, "partition", 0));

  GridSpec grid = config.grid;
  if (!config.grid_set) {
    grid.gamma_min = 0.0;
    grid.gamma_max = 2.0 / std::sqrt(static_cast<double>(config.n));
    grid.gamma_steps = 21;
    grid.beta_min = 0.0;
    grid.beta_max = 1.5707963267948966;
    grid.beta_steps = 21;
  }
  const LandscapeGrid result =
      scan_landscape(problem, partition, grid, h.scmf_for(0),
                     config.jobs > 0 ? config.jobs
                                     : std::thread::hardware_concurrency());

  CsvFile csv = h.csv("landscape.csv", "gamma,beta,energy,converged");
  double best = 0.0;
  double best_gamma = 0.0, best_beta = 0.0;
  bool first = true;
  for (std::size_t gi = 0; gi < result.gammas.size(); ++gi) {
    for (std::size_t bi = 0; bi < result.betas.size(); ++bi) {
      const double energy = result.at(gi, bi);
      csv.row({format_value(result.gammas[gi]), format_value(result.betas[bi]),
               format_value(energy),
               str(std::size_t(result.converged[gi * result.betas.size() + bi]))});
      if (first || energy < best) {
        best = energy;
        best_gamma = result.gammas[gi];
        best_beta = result.betas[bi];
        first = false;
      }
    }
  }
  CsvFile summary = h.csv("summary.csv", "best_energy,best_gamma,best_beta");
  summary.row({format_value(best), format_value(best_gamma), format_value(best_beta)});
  h.report.runs_ok = result.energy.size();
}

// ------------------------------------------------------------ concentration

void run_concentration(Harness& h) {
  const auto& config = h.config;
  struct Row {
    bool ok = false;
    std::string error;
    std::uint64_t seed = 0;
    OptimizeResult fit;
  };
  std::vector<Row> rows(config.ensemble);
  parallel_for(config.ensemble, config.jobs, [&](std::size_t i) {
    Row& row = rows[i];
    row.seed = derive_seed(config.seed, "instance", i);
    try {
      const IsingProblem problem =
          prepare_sk_instance(config.n, config.break_z2, row.seed);
      const Partition partition = random_partition(
          problem.n, config.k, derive_seed(config.seed, "partition", i));
      row.fit = optimize(problem, partition, config.p, config.optimizer,
                         h.scmf_for(i));
      row.ok = true;
    } catch (const std::exception& err) {
      row.error = err.what();
    }
  });

  CsvFile csv = h.csv("optima.csv",
                      "instance,seed,gamma1,beta1,energy,density,evals,exhausted");
  std::vector<double> gammas, betas, densities;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    if (!row.ok) {
      ++h.report.runs_failed;
      h.report.errors.push_back("instance " + str(i) + ": " + row.error);
      continue;
    }
    ++h.report.runs_ok;
    const double density = row.fit.energy / density_scale(config.n);
    csv.row({str(i), str(row.seed), format_value(row.fit.params.gammas[0]),
             format_value(row.fit.params.betas[0]), format_value(row.fit.energy),
             format_value(density), str(row.fit.evals),
             str(std::size_t(row.fit.exhausted))});
    gammas.push_back(row.fit.params.gammas[0]);
    betas.push_back(row.fit.params.betas[0]);
    densities.push_back(density);
  }
  const MeanStats g = mean_and_se(gammas);
  const MeanStats b = mean_and_se(betas);
  const MeanStats d = mean_and_se(densities);
  CsvFile summary = h.csv(
      "summary.csv",
      "instances,mean_gamma,se_gamma,mean_gamma_sqrt_n,mean_beta,se_beta,"
      "mean_density,se_density");
  summary.row({str(g.count), format_value(g.mean), format_value(g.se),
               format_value(g.mean * std::sqrt(static_cast<double>(config.n))),
               format_value(b.mean), format_value(b.se), format_value(d.mean),
               format_value(d.se)});
}

// -------------------------------------------------------------- convergence

void run_convergence(Harness& h) {
  const auto& config = h.config;
  std::vector<ScmfTrace> traces(config.ensemble);
  std::vector<std::string> errors(config.ensemble);
  parallel_for(config.ensemble, config.jobs, [&](std::size_t i) {
    try {
      const IsingProblem problem = prepare_sk_instance(
          config.n, config.break_z2, derive_seed(config.seed, "instance", i));
      const Partition partition = random_partition(
          problem.n, config.k, derive_seed(config.seed, "partition", i));
      const QaoaParams params =
          config.optimizer.init == InitStrategy::Custom
              ? config.optimizer.custom_init
              : sk_heuristic_init(problem.n, config.k, config.p);
      ScmfConfig scmf = h.scmf_for(i);
      scmf.eps_env = 1e-15;  // run the full trace length
      scmf.eps_cost = 1e-15;
      scmf.max_iters = config.convergence_iters;
      traces[i] = run_self_consistency(problem, partition, params, scmf).trace;
    } catch (const std::exception& err) {
      errors[i] = err.what();
    }
  });

  std::vector<ScmfTrace> good;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (!errors[i].empty()) {
      ++h.report.runs_failed;
      h.report.errors.push_back("instance " + str(i) + ": " + errors[i]);
    } else {
      ++h.report.runs_ok;
      good.push_back(traces[i]);
    }
  }

  if (!good.empty()) {
    CsvFile trace_csv =
        h.csv("trace.csv", "iteration,subproblem,env_metric,cost_metric,energy");
    const ScmfTrace& first = good.front();
    for (std::size_t i = 0; i < first.iterations.size(); ++i) {
      const auto& it = first.iterations[i];
      trace_csv.row({str(i), str(it.subproblem), format_value(it.env_metric),
                     format_value(it.cost_metric), format_value(it.energy)});
    }
  }
  if (good.size() >= 2) {
    std::size_t length = good.front().iterations.size();
    for (const auto& trace : good)
      length = std::min(length, trace.iterations.size());
    CsvFile typ = h.csv("typ.csv", "iteration,mean_log_env_metric,typ_env_metric");
    for (std::size_t i = 0; i < length; ++i) {
      double mean_log = 0.0;
      for (const auto& trace : good)
        mean_log += std::log(std::max(trace.iterations[i].env_metric, 1e-16));
      mean_log /= static_cast<double>(good.size());
      typ.row({str(i), format_value(mean_log), format_value(std::exp(mean_log))});
    }
    RateFitOptions options;
    options.burn_in = config.fit_burn_in;
    const RateFit fit = fit_convergence_rate(good, options);
    CsvFile rate = h.csv("rate.csv", "rate,r_squared,floored,window,traces");
    rate.row({format_value(fit.rate), format_value(fit.r_squared),
              str(fit.floored), str(fit.window), str(good.size())});
  }
}

// --------------------------------------------------------------- multistart

void run_multistart(Harness& h) {
  const auto& config = h.config;
  struct Row {
    bool ok = false;
    std::string error;
    MultistartResult multistart;
    double iterative_energy = 0.0;
    QaoaParams params;
  };
  std::vector<Row> rows(config.ensemble);
  parallel_for(config.ensemble, config.jobs, [&](std::size_t i) {
    Row& row = rows[i];
    try {
      const IsingProblem problem = prepare_sk_instance(
          config.n, config.break_z2, derive_seed(config.seed, "instance", i));
      const Partition partition = random_partition(
          problem.n, config.k, derive_seed(config.seed, "partition", i));
      const OptimizeResult fit =
          optimize(problem, partition, 1, config.optimizer, h.scmf_for(i));
      row.params = fit.params;
      FixedPointOptions options;
      options.qubit_cap = config.scmf.qubit_cap;
      row.multistart = solve_fixed_point_multistart(
          problem, partition, fit.params.gammas[0], fit.params.betas[0],
          config.starts, derive_seed(config.seed, "multistart", i), options);
      row.iterative_energy =
          run_self_consistency(problem, partition, fit.params, h.scmf_for(i))
              .energy;
      row.ok = true;
    } catch (const std::exception& err) {
      row.error = err.what();
    }
  });

  CsvFile csv = h.csv("multistart.csv",
                      "instance,solution,residual,energy,hits,dropped");
  CsvFile summary = h.csv(
      "summary.csv",
      "instance,gamma,beta,iterative_energy,best_multistart,distinct,within_0p1");
  std::size_t hits = 0, total = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    if (!row.ok) {
      ++h.report.runs_failed;
      h.report.errors.push_back("instance " + str(i) + ": " + row.error);
      continue;
    }
    ++h.report.runs_ok;
    for (std::size_t s = 0; s < row.multistart.solutions.size(); ++s) {
      const auto& solution = row.multistart.solutions[s];
      csv.row({str(i), str(s), format_value(solution.residual),
               format_value(solution.energy), str(solution.hits),
               str(row.multistart.dropped)});
    }
    if (!row.multistart.solutions.empty()) {
      const double best = row.multistart.solutions.front().energy;
      const bool within = row.iterative_energy <= best + 0.1;
      summary.row({str(i), format_value(row.params.gammas[0]),
                   format_value(row.params.betas[0]),
                   format_value(row.iterative_energy), format_value(best),
                   str(row.multistart.solutions.size()),
                   str(std::size_t(within))});
      ++total;
      if (within) ++hits;
    }
  }
  CsvFile aggregate = h.csv("aggregate.csv", "instances,within_0p1_fraction");
  aggregate.row({str(total), format_value(total == 0 ? 0.0
                                                     : static_cast<double>(hits) /
                                                           static_cast<double>(total))});
}

// ---------------------------------------------------------------- scaling-k

void run_scaling_k(Harness& h) {
  const auto& config = h.config;
  const std::vector<std::size_t> n_values =
      config.n_values.empty() ? std::vector<std::size_t>{config.n}
                              : config.n_values;
  const std::vector<std::size_t> k_values =
      config.k_values.empty() ? std::vector<std::size_t>{1, 2, 4}
                              : config.k_values;

  struct Cell {
    std::size_t n = 0, k = 0, instance = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    OptimizeResult fit;
    double intra_fraction = 0.0;
    double mean_abs_env = 0.0;
    bool converged = false;
  };
  std::vector<Cell> cells;
  for (std::size_t n : n_values)
    for (std::size_t k : k_values)
      for (std::size_t i = 0; i < config.ensemble; ++i) {
        Cell cell;
        cell.n = n;
        cell.k = k;
        cell.instance = i;
        cells.push_back(std::move(cell));
      }

  parallel_for(cells.size(), config.jobs, [&](std::size_t index) {
    Cell& cell = cells[index];
    cell.seed = derive_seed(config.seed, "instance", cell.instance);
    try {
      const IsingProblem problem =
          prepare_sk_instance(cell.n, config.break_z2, cell.seed);
      const Partition partition = random_partition(
          problem.n, cell.k,
          derive_seed(config.seed, "partition", cell.instance));
      const ScmfConfig scmf = h.scmf_for(cell.instance);
      cell.fit =
          optimize(problem, partition, config.p, config.optimizer, scmf);
      const ScmfResult final_run =
          run_self_consistency(problem, partition, cell.fit.params, scmf);
      cell.converged = final_run.trace.converged;
      double abs_sum = 0.0;
      for (double value : final_run.env.e) abs_sum += std::fabs(value);
      cell.mean_abs_env = abs_sum / static_cast<double>(final_run.env.e.size());
      try {
        cell.intra_fraction =
            intra_energy_fraction(problem, partition, final_run.expectations);
      } catch (const std::domain_error&) {
        cell.intra_fraction = std::nan("");
      }
      cell.ok = true;
    } catch (const std::exception& err) {
      cell.error = err.what();
    }
  });

  CsvFile csv = h.csv("runs.csv",
                      "n,k,instance,seed,gamma1,beta1,energy,density,"
                      "intra_fraction,mean_abs_env,converged");
  for (const Cell& cell : cells) {
    if (!cell.ok) {
      ++h.report.runs_failed;
      h.report.errors.push_back("n=" + str(cell.n) + " k=" + str(cell.k) +
                                " instance " + str(cell.instance) + ": " +
                                cell.error);
      continue;
    }
    ++h.report.runs_ok;
    csv.row({str(cell.n), str(cell.k), str(cell.instance), str(cell.seed),
             format_value(cell.fit.params.gammas[0]),
             format_value(cell.fit.params.betas[0]),
             format_value(cell.fit.energy),
             format_value(cell.fit.energy / density_scale(cell.n)),
             format_value(cell.intra_fraction),
             format_value(cell.mean_abs_env), str(std::size_t(cell.converged))});
  }

  CsvFile summary = h.csv("summary.csv",
                          "n,k,instances,mean_density,se_density,"
                          "mean_intra_fraction,mean_abs_env");
  for (std::size_t n : n_values) {
    for (std::size_t k : k_values) {
      std::vector<double> densities, fractions, envs;
      for (const Cell& cell : cells) {
        if (!cell.ok || cell.n != n || cell.k != k) continue;
        densities.push_back(cell.fit.energy / density_scale(n));
        if (!std::isnan(cell.intra_fraction))
          fractions.push_back(cell.intra_fraction);
        envs.push_back(cell.mean_abs_env);
      }
      const MeanStats d = mean_and_se(densities);
      const MeanStats f = mean_and_se(fractions);
      const MeanStats e = mean_and_se(envs);
      summary.row({str(n), str(k), str(d.count), format_value(d.mean),
                   format_value(d.se), format_value(f.mean),
                   format_value(e.mean)});
    }
  }
}

// ---------------------------------------------------------------- scaling-p

void run_scaling_p(Harness& h) {
  const auto& config = h.config;
  const std::vector<std::size_t> p_values =
      config.p_values.empty() ? std::vector<std::size_t>{1, 2, 3}
                              : config.p_values;
  struct Cell {
    std::size_t p = 0, instance = 0;
    bool ok = false;
    std::string error;
    OptimizeResult fit;
  };
  std::vector<Cell> cells;
  for (std::size_t p : p_values)
    for (std::size_t i = 0; i < config.ensemble; ++i) {
      Cell cell;
      cell.p = p;
      cell.instance = i;
      cells.push_back(std::move(cell));
    }

  parallel_for(cells.size(), config.jobs, [&](std::size_t index) {
    Cell& cell = cells[index];
    try {
      const IsingProblem problem = prepare_sk_instance(
          config.n, config.break_z2,
          derive_seed(config.seed, "instance", cell.instance));
      const Partition partition = random_partition(
          problem.n, config.k,
          derive_seed(config.seed, "partition", cell.instance));
      cell.fit = optimize(problem, partition, cell.p, config.optimizer,
                          h.scmf_for(cell.instance));
      cell.ok = true;
    } catch (const std::exception& err) {
      cell.error = err.what();
    }
  });

  CsvFile csv = h.csv("runs.csv", "p,instance,energy,density,evals");
  for (const Cell& cell : cells) {
    if (!cell.ok) {
      ++h.report.runs_failed;
      h.report.errors.push_back("p=" + str(cell.p) + " instance " +
                                str(cell.instance) + ": " + cell.error);
      continue;
    }
    ++h.report.runs_ok;
    csv.row({str(cell.p), str(cell.instance), format_value(cell.fit.energy),
             format_value(cell.fit.energy / density_scale(config.n)),
             str(cell.fit.evals)});
  }
  CsvFile summary = h.csv("summary.csv", "p,instances,mean_density,se_density");
  for (std::size_t p : p_values) {
    std::vector<double> densities;
    for (const Cell& cell : cells)
      if (cell.ok && cell.p == p)
        densities.push_back(cell.fit.energy / density_scale(config.n));
    const MeanStats d = mean_and_se(densities);
    summary.row({str(p), str(d.count), format_value(d.mean), format_value(d.se)});
  }
}

// ------------------------------------------------------------------- clique

struct CliqueRouteStats {
  std::string method;
  std::vector<double> raw_energies;
  std::vector<double> post_energies;
  std::vector<double> post_weights;
  std::vector<std::size_t> post_sizes;
  std::size_t valid = 0;
};

CliqueRouteStats process_samples(const CliqueGraph& graph,
                                 const IsingProblem& problem,
                                 const std::vector<std::vector<std::uint8_t>>& samples,
                                 const std::string& method,
                                 std::size_t post_iters, std::uint64_t seed) {
  CliqueRouteStats stats;
  stats.method = method;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    stats.raw_energies.push_back(classical_energy(problem, samples[s]));
    const auto repaired =
        greedy_clique_repair(graph, samples[s], derive_seed(seed, "repair", s));
    const auto improved = clique_local_search(graph, repaired, post_iters,
                                              derive_seed(seed, "search", s));
    if (is_clique(graph, improved)) ++stats.valid;
    stats.post_energies.push_back(classical_energy(problem, improved));
    stats.post_weights.push_back(clique_weight(graph, improved));
    std::size_t size = 0;
    for (auto bit : improved) size += bit;
    stats.post_sizes.push_back(size);
  }
  return stats;
}

void run_clique(Harness& h) {
  const auto& config = h.config;
  const std::size_t graph_count =
      config.graph_path.empty() ? config.ensemble : 1;

  struct GraphResult {
    bool ok = false;
    std::string error;
    double brute_weight = 0.0;
    std::vector<CliqueRouteStats> routes;  // per lambda x route
    std::vector<double> route_lambdas;
  };
  std::vector<GraphResult> results(graph_count);

  parallel_for(graph_count, config.jobs, [&](std::size_t gi) {
    GraphResult& result = results[gi];
    try {
      const CliqueGraph graph =
          config.graph_path.empty()
              ? random_clique_graph(config.graph_n, config.edge_prob,
                                    derive_seed(config.seed, "graph", gi))
              : load_graph(config.graph_path);
      const Partition partition = random_partition(
          graph.n, config.k, derive_seed(config.seed, "partition", gi));

      if (graph.n <= 20) {
        double max_h = 0.0;
        for (double weight : graph.weights) max_h = std::max(max_h, weight);
        const IsingProblem exact =
            build_clique_problem(graph, 2.0 * max_h + 0.5);
        const auto [bits, energy] = brute_force(exact);
        result.brute_weight = clique_weight(graph, bits);
      }

      for (double lambda : config.lambdas) {
        const IsingProblem problem = build_clique_problem(graph, lambda);
        for (double eta : config.eta_values) {
          ScmfConfig scmf = h.scmf_for(gi);
          scmf.eta = eta;
          scmf.init_env = EnvInit::Half;
          const OptimizeResult fit =
              optimize(problem, partition, config.p, config.optimizer, scmf);
          const ScmfResult run =
              run_self_consistency(problem, partition, fit.params, scmf);

          SolutionPool pool;
          pool.partition = partition;
          pool.samples.resize(partition.k());
          const Environment dressed = scale_environment(run.env, eta);
          for (std::size_t g = 0; g < partition.k(); ++g) {
            const SubproblemSpec spec =
                make_subproblem(problem, partition, dressed, g);
            const SubproblemState state =
                run_qaoa(spec, fit.params, scmf.qubit_cap);
            pool.samples[g] = sample(
                state, config.shots,
                derive_seed(config.seed, "shots", gi * 1000 + g));
          }
          const auto globals = concatenate_global(
              pool, config.shots, derive_seed(config.seed, "concat", gi));
          char label[48];
          std::snprintf(label, sizeof(label), "scmf-eta=%g", eta);
          result.routes.push_back(process_samples(
              graph, problem, globals, label, config.post_iters,
              derive_seed(config.seed, "post", gi)));
          result.route_lambdas.push_back(lambda);
        }

        // uniform random baseline
        Rng rng(derive_seed(config.seed, "random-baseline", gi));
        std::vector<std::vector<std::uint8_t>> randoms(config.shots);
        for (auto& bits : randoms) {
          bits.resize(graph.n);
          for (auto& bit : bits)
            bit = static_cast<std::uint8_t>(rng.uniform_index(2));
        }
        result.routes.push_back(process_samples(
            graph, problem, randoms, "random", config.post_iters,
            derive_seed(config.seed, "post-random", gi)));
        result.route_lambdas.push_back(lambda);
      }
      result.ok = true;
    } catch (const std::exception& err) {
      result.error = err.what();
    }
  });

  CsvFile samples_csv =
      h.csv("samples.csv",
            "graph,lambda,method,sample_id,raw_energy,repaired_energy,"
            "clique_size,clique_weight");
  CsvFile summary = h.csv(
      "summary.csv",
      "graph,lambda,method,samples,mean_raw,se_raw,valid_fraction,best_weight,"
      "brute_weight,weight_ratio");
  for (std::size_t gi = 0; gi < results.size(); ++gi) {
    const GraphResult& result = results[gi];
    if (!result.ok) {
      ++h.report.runs_failed;
      h.report.errors.push_back("graph " + str(gi) + ": " + result.error);
      continue;
    }
    ++h.report.runs_ok;
    for (std::size_t r = 0; r < result.routes.size(); ++r) {
      const CliqueRouteStats& route = result.routes[r];
      const double lambda = result.route_lambdas[r];
      for (std::size_t s = 0; s < route.raw_energies.size(); ++s)
        samples_csv.row({str(gi), format_value(lambda), route.method, str(s),
                         format_value(route.raw_energies[s]),
                         format_value(route.post_energies[s]),
                         str(route.post_sizes[s]),
                         format_value(route.post_weights[s])});
      const MeanStats raw = mean_and_se(route.raw_energies);
      double best_weight = 0.0;
      for (double weight : route.post_weights)
        best_weight = std::max(best_weight, weight);
      summary.row(
          {str(gi), format_value(lambda), route.method,
           str(route.raw_energies.size()), format_value(raw.mean),
           format_value(raw.se),
           format_value(static_cast<double>(route.valid) /
                        static_cast<double>(route.raw_energies.size())),
           format_value(best_weight), format_value(result.brute_weight),
           format_value(result.brute_weight > 0.0
                            ? best_weight / result.brute_weight
                            : 0.0)});
    }
  }
}

// ----------------------------------------------------------------- baseline

void run_baseline(Harness& h) {
  const auto& config = h.config;
  struct Row {
    bool ok = false;
    std::string error;
    double sa = 0.0, greedy = 0.0, brute = 0.0;
    bool has_brute = false;
  };
  std::vector<Row> rows(config.ensemble);
  parallel_for(config.ensemble, config.jobs, [&](std::size_t i) {
    Row& row = rows[i];
    try {
      const IsingProblem problem = prepare_sk_instance(
          config.n, config.break_z2, derive_seed(config.seed, "instance", i));
      row.sa = simulated_annealing(
                   problem,
                   default_schedule(problem, derive_seed(config.seed, "sa", i)))
                   .second;
      row.greedy =
          greedy_descent(problem, derive_seed(config.seed, "greedy", i)).second;
      if (problem.n <= 24) {
        row.brute = brute_force(problem).second;
        row.has_brute = true;
      }
      row.ok = true;
    } catch (const std::exception& err) {
      row.error = err.what();
    }
  });

  CsvFile csv = h.csv("baselines.csv", "instance,method,energy,density");
  std::vector<double> sa_values, greedy_values, brute_values;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    if (!row.ok) {
      ++h.report.runs_failed;
      h.report.errors.push_back("instance " + str(i) + ": " + row.error);
      continue;
    }
    ++h.report.runs_ok;
    const double scale = density_scale(config.n);
    csv.row({str(i), "simulated-annealing", format_value(row.sa),
             format_value(row.sa / scale)});
    csv.row({str(i), "greedy-descent", format_value(row.greedy),
             format_value(row.greedy / scale)});
    sa_values.push_back(row.sa / scale);
    greedy_values.push_back(row.greedy / scale);
    if (row.has_brute) {
      csv.row({str(i), "brute-force", format_value(row.brute),
               format_value(row.brute / scale)});
      brute_values.push_back(row.brute / scale);
    }
  }
  CsvFile summary = h.csv("summary.csv", "method,instances,mean_density,se_density");
  const auto summarize = [&](const char* name, const std::vector<double>& values) {
    if (values.empty()) return;
    const MeanStats stats = mean_and_se(values);
    summary.row({name, str(stats.count), format_value(stats.mean),
                 format_value(stats.se)});
  };
  summarize("simulated-annealing", sa_values);
  summarize("greedy-descent", greedy_values);
  summarize("brute-force", brute_values);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  Harness harness(config);
  switch (config.kind) {
    case ExperimentKind::Landscape: run_landscape(harness); break;
    case ExperimentKind::Concentration: run_concentration(harness); break;
    case ExperimentKind::Convergence: run_convergence(harness); break;
    case ExperimentKind::Multistart: run_multistart(harness); break;
    case ExperimentKind::ScalingK: run_scaling_k(harness); break;
    case ExperimentKind::ScalingP: run_scaling_p(harness); break;
    case ExperimentKind::Clique: run_clique(harness); break;
    case ExperimentKind::Baseline: run_baseline(harness); break;
  }
  harness.finish();
  return harness.report;
}

}  // namespace scqaoa
