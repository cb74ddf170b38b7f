#include "scqaoa/scmf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scqaoa/rng.hpp"

namespace scqaoa {

namespace {

inline double relative_change(double prev, double next) {
  if (std::fabs(next) < 1e-12) return std::fabs(next - prev);
  return std::fabs(1.0 - prev / next);
}

inline double clamp_to_basis(Basis basis, double value) {
  const double lo = basis == Basis::Spin ? -1.0 : 0.0;
  return std::clamp(value, lo, 1.0);
}

}  // namespace

std::pair<double, double> convergence_metrics(
    const std::vector<double>& prev_env, const std::vector<double>& next_env,
    double prev_cost, double next_cost) {
  if (prev_env.size() != next_env.size())
    throw std::invalid_argument("convergence_metrics: length mismatch");
  double env_metric = 0.0;
  for (std::size_t i = 0; i < prev_env.size(); ++i)
    env_metric = std::max(env_metric, relative_change(prev_env[i], next_env[i]));
  return {env_metric, relative_change(prev_cost, next_cost)};
}

Environment scale_environment(const Environment& env, double eta) {
  Environment scaled;
  scaled.basis = env.basis;
  scaled.e.resize(env.e.size());
  for (std::size_t i = 0; i < env.e.size(); ++i)
    scaled.e[i] = clamp_to_basis(env.basis, eta * env.e[i]);
  return scaled;
}

ExpectationSet evaluate_subproblem(const SubproblemSpec& spec,
                                   const QaoaParams& params, EngineMode mode,
                                   std::size_t qubit_cap) {
  const bool analytic =
      mode == EngineMode::AnalyticP1 ||
      (mode == EngineMode::Auto && spec.size() > qubit_cap);
  if (analytic) {
    if (params.p() != 1) {
      if (mode == EngineMode::AnalyticP1)
        throw std::invalid_argument(
            "evaluate_subproblem: analytic engine requires p == 1");
      throw std::length_error(
          "evaluate_subproblem: subproblem exceeds the qubit cap and p > 1 "
          "has no closed form");
    }
    return analytic_expectations_p1(spec, params.gammas[0], params.betas[0]);
  }
  return expectations(run_qaoa(spec, params, qubit_cap), spec);
}

namespace {

void validate_scmf_config(const ScmfConfig& config, const Partition& partition,
                          Basis basis) {
  if (config.eps_env <= 0.0 || config.eps_cost <= 0.0)
    throw std::invalid_argument("scmf: thresholds must be positive");
  if (config.eta < 0.0 || config.eta > 4.0)
    throw std::invalid_argument("scmf: eta must lie in [0, 4]");
  if (config.init_env == EnvInit::Custom &&
      config.custom_init.size() != partition.n())
    throw std::invalid_argument("scmf: custom init length mismatch");
  if (config.init_env == EnvInit::Custom) {
    Environment probe{basis, config.custom_init};
    validate_environment(probe, partition.n());
  }
}

Environment initial_environment(const ScmfConfig& config, Basis basis,
                                std::size_t n) {
  Environment env;
  env.basis = basis;
  switch (config.init_env) {
    case EnvInit::Zero:
      env.e.assign(n, 0.0);
      break;
    case EnvInit::Half:
      env.e.assign(n, 0.5);
      break;
    case EnvInit::Custom:
      env.e = config.custom_init;
      break;
  }
  return env;
}

// Expectations for a subproblem that has not been evaluated yet, synthesized
// from the initial environment so the cost metric is defined from step one.
ExpectationSet seed_expectations(const Environment& env,
                                 const std::vector<std::size_t>& group) {
  const std::size_t m = group.size();
  ExpectationSet set;
  set.one_body.resize(m);
  set.two_body.assign(m * m, 0.0);
  for (std::size_t a = 0; a < m; ++a) set.one_body[a] = env.e[group[a]];
  for (std::size_t a = 0; a < m; ++a) {
    set.two_body[a * m + a] =
        env.basis == Basis::Spin ? 1.0 : set.one_body[a];
    for (std::size_t b = a + 1; b < m; ++b)
      set.two_body[a * m + b] = set.two_body[b * m + a] =
          set.one_body[a] * set.one_body[b];
  }
  return set;
}

}  // namespace

ScmfResult run_self_consistency(const IsingProblem& problem,
                                const Partition& partition,
                                const QaoaParams& params,
                                const ScmfConfig& config) {
  validate_params(params);
  validate_scmf_config(config, partition, problem.basis);
  const std::size_t n = problem.n;
  const std::size_t k = partition.k();
  const std::size_t max_iters =
      config.max_iters > 0 ? config.max_iters : 200 * k;

  ScmfResult result;
  result.env = initial_environment(config, problem.basis, n);
  result.expectations.resize(k);
  for (std::size_t g = 0; g < k; ++g)
    result.expectations[g] = seed_expectations(result.env, partition.groups[g]);

  double cost = factorized_energy(problem, partition, result.expectations);
  Rng rng(config.rng_seed);
  // Convergence needs a run of consecutive in-budget updates that covers
  // every subproblem: a short streak alone can miss stale groups entirely.
  std::size_t streak = 0;
  std::size_t streak_start = 0;
  std::vector<std::size_t> last_visit(k, 0);

  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    const std::size_t g = config.selection == Selection::RoundRobin
                              ? iter % k
                              : static_cast<std::size_t>(rng.uniform_index(k));
    const Environment dressed = scale_environment(result.env, config.eta);
    const SubproblemSpec spec = make_subproblem(problem, partition, dressed, g);
    const ExpectationSet next =
        evaluate_subproblem(spec, params, config.engine, config.qubit_cap);

    std::vector<double> next_env = result.env.e;
    const auto& group = partition.groups[g];
    for (std::size_t a = 0; a < group.size(); ++a)
      next_env[group[a]] = clamp_to_basis(problem.basis, next.one_body[a]);

    result.expectations[g] = next;
    const double next_cost =
        factorized_energy(problem, partition, result.expectations);
    const auto [env_metric, cost_metric] =
        convergence_metrics(result.env.e, next_env, cost, next_cost);
    result.trace.iterations.push_back({g, env_metric, cost_metric, next_cost});

    result.env.e = std::move(next_env);
    cost = next_cost;
    last_visit[g] = iter + 1;

    if (env_metric < config.eps_env && cost_metric < config.eps_cost) {
      if (streak == 0) streak_start = iter + 1;
      ++streak;
    } else {
      streak = 0;
    }
    if (streak >= k) {
      const std::size_t oldest =
          *std::min_element(last_visit.begin(), last_visit.end());
      if (oldest >= streak_start) {
        result.trace.converged = true;
        break;
      }
    }
  }
  result.energy = cost;
  return result;
}

RateFit fit_convergence_rate(const std::vector<ScmfTrace>& traces,
                             const RateFitOptions& options) {
  if (traces.size() < 2)
    throw std::invalid_argument("fit_convergence_rate: need at least 2 traces");
  std::size_t length = traces.front().iterations.size();
  for (const auto& trace : traces)
    length = std::min(length, trace.iterations.size());
  if (length < options.burn_in + 10)
    throw std::invalid_argument(
        "fit_convergence_rate: need >= 10 post-burn-in iterations per trace");

  RateFit fit;
  fit.window = length - options.burn_in;
  std::vector<double> mean_log(fit.window, 0.0);
  for (const auto& trace : traces) {
    for (std::size_t i = 0; i < fit.window; ++i) {
      double metric = trace.iterations[options.burn_in + i].env_metric;
      if (metric < options.floor) {
        metric = options.floor;
        ++fit.floored;
      }
      mean_log[i] += std::log(metric);
    }
  }
  for (double& value : mean_log) value /= static_cast<double>(traces.size());

  // least squares y = a + b*x over x = 0..window-1
  const double count = static_cast<double>(fit.window);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < fit.window; ++i) {
    const double x = static_cast<double>(i);
    sx += x;
    sy += mean_log[i];
    sxx += x * x;
    sxy += x * mean_log[i];
  }
  const double denom = count * sxx - sx * sx;
  const double slope = (count * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / count;
  fit.rate = -slope;

  double ss_res = 0.0, ss_tot = 0.0;
  const double mean_y = sy / count;
  for (std::size_t i = 0; i < fit.window; ++i) {
    const double x = static_cast<double>(i);
    const double predicted = intercept + slope * x;
    ss_res += (mean_log[i] - predicted) * (mean_log[i] - predicted);
    ss_tot += (mean_log[i] - mean_y) * (mean_log[i] - mean_y);
  }
  fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

namespace {

// Right-hand side of the p=1 self-consistency system. The intra-group cosine
// products do not depend on the environment and are precomputed.
struct FixedPointMap {
  const IsingProblem* problem;
  const Partition* partition;
  double gamma;
  double sin2b;
  std::vector<double> cos_products;

  FixedPointMap(const IsingProblem& prob, const Partition& part, double g,
                double beta)
      : problem(&prob), partition(&part), gamma(g), sin2b(std::sin(2.0 * beta)) {
    const std::size_t n = prob.n;
    cos_products.assign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t gi = part.group_of[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || part.group_of[j] != gi) continue;
        cos_products[i] *= std::cos(2.0 * gamma * prob.w[i * n + j]);
      }
    }
  }

  void apply(const std::vector<double>& e, std::vector<double>& out) const {
    const std::size_t n = problem->n;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t gi = partition->group_of[i];
      double dressed = problem->h[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (partition->group_of[j] == gi) continue;
        dressed += problem->w[i * n + j] * e[j];
      }
      out[i] = -sin2b * std::sin(2.0 * gamma * dressed) * cos_products[i];
    }
  }

  double residual(const std::vector<double>& e, std::vector<double>& scratch) const {
    apply(e, scratch);
    double worst = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i)
      worst = std::max(worst, std::fabs(e[i] - scratch[i]));
    return worst;
  }
};

// Gaussian elimination with partial pivoting; returns false when singular.
bool solve_linear(std::vector<double>& a, std::vector<double>& b,
                  std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (std::fabs(a[row * n + col]) > std::fabs(a[pivot * n + col]))
        pivot = row;
    if (std::fabs(a[pivot * n + col]) < 1e-14) return false;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a[col * n + j], a[pivot * n + j]);
      std::swap(b[col], b[pivot]);
    }
    const double inv = 1.0 / a[col * n + col];
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = a[row * n + col] * inv;
      if (factor == 0.0) continue;
      for (std::size_t j = col; j < n; ++j)
        a[row * n + j] -= factor * a[col * n + j];
      b[row] -= factor * b[col];
    }
  }
  for (std::size_t row = n; row-- > 0;) {
    double value = b[row];
    for (std::size_t j = row + 1; j < n; ++j) value -= a[row * n + j] * b[j];
    b[row] = value / a[row * n + row];
  }
  return true;
}

bool solve_single_start(const FixedPointMap& map, std::vector<double>& e,
                        const FixedPointOptions& opt, double& residual_out) {
  const std::size_t n = e.size();
  std::vector<double> fe(n), scratch(n);
  double best = map.residual(e, scratch);
  std::size_t stall = 0;

  for (std::size_t iter = 0; iter < opt.max_damped_iters; ++iter) {
    map.apply(e, fe);
    for (std::size_t i = 0; i < n; ++i)
      e[i] += opt.damping * (fe[i] - e[i]);
    const double residual = map.residual(e, scratch);
    if (residual < opt.residual_tol) {
      residual_out = residual;
      return true;
    }
    if (residual < best - 1e-15) {
      best = residual;
      stall = 0;
    } else if (++stall >= opt.stall_limit) {
      break;
    }
  }

  // Newton on G(e) = e - F(e) with a finite-difference Jacobian.
  std::vector<double> g0(n), g1(n), jac(n * n), step(n), probe(n);
  const double fd = 1e-7;
  for (std::size_t newton = 0; newton < opt.max_newton_iters; ++newton) {
    map.apply(e, fe);
    for (std::size_t i = 0; i < n; ++i) g0[i] = e[i] - fe[i];
    double residual = 0.0;
    for (double value : g0) residual = std::max(residual, std::fabs(value));
    if (residual < opt.residual_tol) {
      residual_out = residual;
      return true;
    }
    probe = e;
    for (std::size_t col = 0; col < n; ++col) {
      const double saved = probe[col];
      probe[col] = saved + fd;
      map.apply(probe, g1);
      for (std::size_t row = 0; row < n; ++row) {
        const double g_pert = probe[row] - g1[row];
        jac[row * n + col] = (g_pert - g0[row]) / fd;
      }
      probe[col] = saved;
    }
    for (std::size_t i = 0; i < n; ++i) step[i] = -g0[i];
    if (!solve_linear(jac, step, n)) return false;
    // backtracking on the residual
    double scale = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 12; ++halving) {
      for (std::size_t i = 0; i < n; ++i)
        probe[i] = std::clamp(e[i] + scale * step[i], -2.0, 2.0);
      if (map.residual(probe, scratch) < residual) {
        e = probe;
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) return false;
  }
  return false;
}

}  // namespace

MultistartResult solve_fixed_point_multistart(const IsingProblem& problem,
                                              const Partition& partition,
                                              double gamma, double beta,
                                              std::size_t starts,
                                              std::uint64_t seed,
                                              const FixedPointOptions& options) {
  if (problem.basis != Basis::Spin)
    throw std::invalid_argument(
        "solve_fixed_point_multistart: spin basis required");
  const std::size_t n = problem.n;
  const FixedPointMap map(problem, partition, gamma, beta);
  const QaoaParams params{{gamma}, {beta}};

  MultistartResult result;
  result.starts = starts;
  Rng rng(seed);
  std::vector<double> e(n), scratch(n);

  for (std::size_t start = 0; start < starts; ++start) {
    for (double& value : e) value = rng.uniform(-1.0, 1.0);
    double residual = 0.0;
    if (!solve_single_start(map, e, options, residual)) {
      ++result.dropped;
      continue;
    }
    bool duplicate = false;
    for (auto& known : result.solutions) {
      double distance = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        distance = std::max(distance, std::fabs(known.env.e[i] - e[i]));
      if (distance < options.dedup_distance) {
        ++known.hits;
        if (residual < known.residual) known.residual = residual;
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;

    FixedPointSolution solution;
    solution.env = Environment{Basis::Spin, e};
    for (double& value : solution.env.e) value = std::clamp(value, -1.0, 1.0);
    solution.residual = residual;
    solution.hits = 1;
    std::vector<ExpectationSet> sets(partition.k());
    for (std::size_t g = 0; g < partition.k(); ++g) {
      const SubproblemSpec spec =
          make_subproblem(problem, partition, solution.env, g);
      sets[g] = evaluate_subproblem(spec, params, options.energy_engine,
                                    options.qubit_cap);
    }
    solution.energy = factorized_energy(problem, partition, sets);
    result.solutions.push_back(std::move(solution));
  }

  std::sort(result.solutions.begin(), result.solutions.end(),
            [](const FixedPointSolution& a, const FixedPointSolution& b) {
              return a.energy < b.energy;
            });
  return result;
}

}  // namespace scqaoa
