#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "scqaoa/model.hpp"
#include "scqaoa/qaoa.hpp"

namespace scqaoa {

enum class EnvInit { Zero, Half, Custom };
enum class Selection { UniformRandom, RoundRobin };

// How subproblem expectations are evaluated inside the loop. Auto uses the
// state-vector simulator up to the qubit cap and falls back to the exact
// p=1 closed forms above it; AnalyticP1 forces the closed forms (p=1 only).
enum class EngineMode { Auto, StateVector, AnalyticP1 };

struct ScmfConfig {
  double eps_env = 1e-4;
  double eps_cost = 1e-4;
  std::size_t max_iters = 0;  // 0 -> 200 * K updates
  double eta = 1.0;           // environment scaling at use sites
  EnvInit init_env = EnvInit::Zero;
  std::vector<double> custom_init;  // used when init_env == Custom
  std::uint64_t rng_seed = 0;
  Selection selection = Selection::UniformRandom;
  EngineMode engine = EngineMode::Auto;
  std::size_t qubit_cap = kDefaultQubitCap;
};

struct ScmfIteration {
  std::size_t subproblem = 0;
  double env_metric = 0.0;
  double cost_metric = 0.0;
  double energy = 0.0;
};

struct ScmfTrace {
  std::vector<ScmfIteration> iterations;
  bool converged = false;

  std::size_t iterations_used() const { return iterations.size(); }
};

struct ScmfResult {
  Environment env;
  std::vector<ExpectationSet> expectations;  // most recent per subproblem
  ScmfTrace trace;
  double energy = 0.0;  // factorized energy at the final expectations
};

// Relative-change convergence metrics: the environment metric is the max
// elementwise |1 - prev/next|, the cost metric the scalar analogue. Entries
// with |next| < 1e-12 fall back to the absolute change.
std::pair<double, double> convergence_metrics(
    const std::vector<double>& prev_env, const std::vector<double>& next_env,
    double prev_cost, double next_cost);

// Entrywise multiply by eta, clamped to the basis range.
Environment scale_environment(const Environment& env, double eta);

// The self-consistent mean-field loop: pick a subproblem, dress it with the
// eta-scaled environment, run the QAOA, overwrite that subproblem's
// environment entries with the new one-body expectations (stored unscaled).
// Declares convergence when both metrics stay below their thresholds for a
// window of K consecutive updates. Non-convergence within max_iters is
// reported through the trace, not an exception.
ScmfResult run_self_consistency(const IsingProblem& problem,
                                const Partition& partition,
                                const QaoaParams& params,
                                const ScmfConfig& config);

// Expectations for one subproblem under the configured engine policy.
ExpectationSet evaluate_subproblem(const SubproblemSpec& spec,
                                   const QaoaParams& params, EngineMode mode,
                                   std::size_t qubit_cap);

struct RateFitOptions {
  std::size_t burn_in = 20;   // iterations dropped before the fit window
  double floor = 1e-16;       // zero metrics are floored before the log
};

struct RateFit {
  double rate = 0.0;       // f >= 0 for converging ensembles
  double r_squared = 0.0;  // of the linear fit to the mean log-metric
  std::size_t floored = 0;
  std::size_t window = 0;  // fitted iteration count
};

// typ-style convergence-rate estimate: mean of log(env metric) across traces
// per iteration index, least-squares slope over the tail window, negated.
RateFit fit_convergence_rate(const std::vector<ScmfTrace>& traces,
                             const RateFitOptions& options = {});

struct FixedPointOptions {
  double damping = 0.5;
  std::size_t stall_limit = 200;  // damped steps without progress before Newton
  std::size_t max_damped_iters = 2000;
  std::size_t max_newton_iters = 50;
  double residual_tol = 1e-8;
  double dedup_distance = 1e-3;  // max-norm
  EngineMode energy_engine = EngineMode::Auto;
  std::size_t qubit_cap = kDefaultQubitCap;
};

struct FixedPointSolution {
  Environment env;
  double residual = 0.0;
  double energy = 0.0;
  std::size_t hits = 0;  // number of starts that landed here
};

struct MultistartResult {
  std::vector<FixedPointSolution> solutions;  // sorted by energy
  std::size_t starts = 0;
  std::size_t dropped = 0;  // non-converged starts
};

// Solves the p=1 self-consistency system
//   e_i = -sin(2 beta) sin(2 gamma h~_i(e)) prod_{j in S(i), j != i} cos(2 gamma w_ij)
// from `starts` uniform random initial environments, by damped fixed-point
// iteration with a finite-difference Newton fallback. Spin basis only.
MultistartResult solve_fixed_point_multistart(const IsingProblem& problem,
                                              const Partition& partition,
                                              double gamma, double beta,
                                              std::size_t starts,
                                              std::uint64_t seed,
                                              const FixedPointOptions& options = {});

}  // namespace scqaoa
