#pragma once

#include <cstdint>
#include <vector>

#include "scqaoa/model.hpp"
#include "scqaoa/scmf.hpp"

namespace scqaoa {

enum class InitStrategy { SkHeuristic, Custom, Grid };

struct OptimizerConfig {
  std::size_t max_evals = 200;
  double simplex_scale = 0.1;  // radians
  double tol_x = 1e-4;
  double tol_f = 1e-7;
  InitStrategy init = InitStrategy::SkHeuristic;
  QaoaParams custom_init;       // used when init == Custom
  std::size_t grid_steps = 5;   // used when init == Grid (p = 1 only)
};

struct ObjectiveMeta {
  bool converged = true;
  std::size_t iterations = 0;
};

// Factorized energy after converging the environment at fixed angles.
// Non-converged loops still return the last energy; the flag travels through
// `meta`.
double objective(const IsingProblem& problem, const Partition& partition,
                 const QaoaParams& params, const ScmfConfig& scmf,
                 ObjectiveMeta* meta = nullptr);

struct OptimizeResult {
  QaoaParams params;
  double energy = 0.0;
  std::size_t evals = 0;
  bool exhausted = false;
  std::vector<double> trace;  // best energy after each evaluation
};

// Nelder-Mead over the 2p shared angles. Deterministic for a fixed config.
OptimizeResult optimize(const IsingProblem& problem, const Partition& partition,
                        std::size_t p, const OptimizerConfig& optimizer,
                        const ScmfConfig& scmf);

struct GridSpec {
  double gamma_min = 0.0;
  double gamma_max = 0.5;
  std::size_t gamma_steps = 21;
  double beta_min = 0.0;
  double beta_max = 1.5707963267948966;
  std::size_t beta_steps = 21;
};

struct LandscapeGrid {
  std::vector<double> gammas;
  std::vector<double> betas;
  std::vector<double> energy;          // gamma-major
  std::vector<std::uint8_t> converged;

  double at(std::size_t gi, std::size_t bi) const {
    return energy[gi * betas.size() + bi];
  }
};

// Each grid point is an independent self-consistency run at fixed angles
// (p = 1). `jobs` > 1 evaluates points concurrently; results are positional,
// so the output is independent of scheduling.
LandscapeGrid scan_landscape(const IsingProblem& problem,
                             const Partition& partition, const GridSpec& grid,
                             const ScmfConfig& scmf, std::size_t jobs = 1);

// Concentration-based initial angles for SK ensembles:
// gamma anchored at 1/(2 sqrt(n)), beta at pi/8 for k <= 2 ramping to pi/4
// as k -> n; depth p > 1 uses a linear gamma-up / beta-down ramp around the
// anchors.
QaoaParams sk_heuristic_init(std::size_t n, std::size_t k, std::size_t p);

}  // namespace scqaoa
