#include "scqaoa/variational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "scqaoa/nelder_mead.hpp"

namespace scqaoa {

namespace {

constexpr double kPi = 3.14159265358979323846;

QaoaParams unpack_angles(const std::vector<double>& x, std::size_t p) {
  QaoaParams params;
  params.gammas.assign(x.begin(), x.begin() + p);
  params.betas.assign(x.begin() + p, x.end());
  return params;
}

}  // namespace

double objective(const IsingProblem& problem, const Partition& partition,
                 const QaoaParams& params, const ScmfConfig& scmf,
                 ObjectiveMeta* meta) {
  const ScmfResult result =
      run_self_consistency(problem, partition, params, scmf);
  if (meta != nullptr) {
    meta->converged = result.trace.converged;
    meta->iterations = result.trace.iterations_used();
  }
  return result.energy;
}

QaoaParams sk_heuristic_init(std::size_t n, std::size_t k, std::size_t p) {
  if (n == 0 || k == 0 || p == 0)
    throw std::invalid_argument("sk_heuristic_init: n, k, p must be positive");
  const double gamma_anchor = 0.5 / std::sqrt(static_cast<double>(n));
  double beta_anchor = kPi / 8.0;
  if (k > 2 && n > 2) {
    // ramp in t = 1 - 1/k between the k=2 and k=n anchors
    const double t2 = 0.5;
    const double tn = 1.0 - 1.0 / static_cast<double>(n);
    const double t = 1.0 - 1.0 / static_cast<double>(k);
    const double s = std::clamp((t - t2) / (tn - t2), 0.0, 1.0);
    beta_anchor = kPi / 8.0 + s * (kPi / 4.0 - kPi / 8.0);
  }
  QaoaParams params;
  params.gammas.resize(p);
  params.betas.resize(p);
  for (std::size_t layer = 0; layer < p; ++layer) {
    const double ramp =
        2.0 * static_cast<double>(layer + 1) / static_cast<double>(p + 1);
    params.gammas[layer] = gamma_anchor * ramp;
    params.betas[layer] = beta_anchor * (2.0 - ramp);
  }
  return params;
}

OptimizeResult optimize(const IsingProblem& problem, const Partition& partition,
                        std::size_t p, const OptimizerConfig& optimizer,
                        const ScmfConfig& scmf) {
  if (p == 0) throw std::invalid_argument("optimize: need p >= 1");

  QaoaParams start;
  switch (optimizer.init) {
    case InitStrategy::SkHeuristic:
      start = sk_heuristic_init(problem.n, partition.k(), p);
      break;
    case InitStrategy::Custom:
      start = optimizer.custom_init;
      if (start.p() != p)
        throw std::invalid_argument("optimize: custom init depth mismatch");
      break;
    case InitStrategy::Grid: {
      if (p != 1)
        throw std::invalid_argument("optimize: grid init supports p = 1 only");
      const QaoaParams anchor = sk_heuristic_init(problem.n, partition.k(), 1);
      double best = 0.0;
      bool first = true;
      const std::size_t steps = std::max<std::size_t>(optimizer.grid_steps, 2);
      for (std::size_t gi = 0; gi < steps; ++gi) {
        for (std::size_t bi = 0; bi < steps; ++bi) {
          QaoaParams candidate;
          candidate.gammas = {anchor.gammas[0] * 2.0 *
                              static_cast<double>(gi + 1) /
                              static_cast<double>(steps)};
          candidate.betas = {kPi / 4.0 * static_cast<double>(bi + 1) /
                             static_cast<double>(steps)};
          const double value = objective(problem, partition, candidate, scmf);
          if (first || value < best) {
            best = value;
            start = candidate;
            first = false;
          }
        }
      }
      break;
    }
  }

  std::vector<double> x0(2 * p);
  for (std::size_t i = 0; i < p; ++i) {
    x0[i] = start.gammas[i];
    x0[p + i] = start.betas[i];
  }
  NelderMeadOptions options;
  options.max_evals = optimizer.max_evals;
  options.tol_x = optimizer.tol_x;
  options.tol_f = optimizer.tol_f;
  const std::vector<double> steps(2 * p, optimizer.simplex_scale);

  const NelderMeadResult fit = nelder_mead(
      [&](const std::vector<double>& x) {
        return objective(problem, partition, unpack_angles(x, p), scmf);
      },
      std::move(x0), steps, options);

  OptimizeResult result;
  result.params = unpack_angles(fit.x, p);
  result.energy = fit.value;
  result.evals = fit.evals;
  result.exhausted = fit.exhausted;
  result.trace = fit.history;
  return result;
}

LandscapeGrid scan_landscape(const IsingProblem& problem,
                             const Partition& partition, const GridSpec& grid,
                             const ScmfConfig& scmf, std::size_t jobs) {
  if (grid.gamma_steps == 0 || grid.beta_steps == 0)
    throw std::invalid_argument("scan_landscape: empty grid");
  LandscapeGrid out;
  out.gammas.resize(grid.gamma_steps);
  out.betas.resize(grid.beta_steps);
  for (std::size_t i = 0; i < grid.gamma_steps; ++i)
    out.gammas[i] = grid.gamma_steps == 1
                        ? grid.gamma_min
                        : grid.gamma_min + (grid.gamma_max - grid.gamma_min) *
                                               static_cast<double>(i) /
                                               static_cast<double>(grid.gamma_steps - 1);
  for (std::size_t i = 0; i < grid.beta_steps; ++i)
    out.betas[i] = grid.beta_steps == 1
                       ? grid.beta_min
                       : grid.beta_min + (grid.beta_max - grid.beta_min) *
                                             static_cast<double>(i) /
                                             static_cast<double>(grid.beta_steps - 1);

  const std::size_t total = grid.gamma_steps * grid.beta_steps;
  out.energy.assign(total, 0.0);
  out.converged.assign(total, 0);

  auto evaluate_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t index = begin; index < end; ++index) {
      const std::size_t gi = index / grid.beta_steps;
      const std::size_t bi = index % grid.beta_steps;
      QaoaParams params;
      params.gammas = {out.gammas[gi]};
      params.betas = {out.betas[bi]};
      ObjectiveMeta meta;
      try {
        out.energy[index] = objective(problem, partition, params, scmf, &meta);
        out.converged[index] = meta.converged ? 1 : 0;
      } catch (const std::exception&) {
        out.energy[index] = std::nan("");
        out.converged[index] = 0;
      }
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, total));
  if (workers == 1) {
    evaluate_range(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(total, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(evaluate_range, begin, end);
    }
    for (auto& thread : pool) thread.join();
  }
  return out;
}

}  // namespace scqaoa
