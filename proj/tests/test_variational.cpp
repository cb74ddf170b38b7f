#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "scqaoa/instances.hpp"
#include "scqaoa/model.hpp"
#include "scqaoa/nelder_mead.hpp"
#include "scqaoa/qaoa.hpp"
#include "scqaoa/rng.hpp"
#include "scqaoa/scmf.hpp"
#include "scqaoa/variational.hpp"

using namespace scqaoa;

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("nelder-mead minimizes a quadratic bowl") {
  const std::vector<double> target{1.5, -2.0, 0.25};
  NelderMeadOptions options;
  options.max_evals = 600;
  options.tol_x = 1e-7;
  options.tol_f = 1e-12;
  const NelderMeadResult fit = nelder_mead(
      [&](const std::vector<double>& x) {
        double total = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
          total += (x[i] - target[i]) * (x[i] - target[i]);
        return total;
      },
      {0.0, 0.0, 0.0}, {0.5, 0.5, 0.5}, options);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(fit.x[i] == doctest::Approx(target[i]).epsilon(1e-3));
  CHECK(fit.value <= 1e-7);
  CHECK_FALSE(fit.exhausted);

  CHECK_THROWS_AS(nelder_mead([](const std::vector<double>&) { return 0.0; },
                              {}, {}, options),
                  std::invalid_argument);
}

TEST_CASE("objective vanishes at gamma = 0 and is deterministic") {
  const IsingProblem problem = break_z2_symmetry(generate_sk(10, 3)).problem;
  const Partition partition = random_partition(problem.n, 2, 4);
  ScmfConfig scmf;
  scmf.rng_seed = 5;
  ObjectiveMeta meta;
  const double zero = objective(problem, partition, {{0.0}, {0.9}}, scmf, &meta);
  CHECK(zero == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(meta.converged);

  const QaoaParams params{{0.21}, {0.37}};
  const double first = objective(problem, partition, params, scmf);
  const double second = objective(problem, partition, params, scmf);
  CHECK(first == second);
}

TEST_CASE("objective at K=1 equals the plain QAOA energy") {
  const IsingProblem problem = break_z2_symmetry(generate_sk(9, 13)).problem;
  const Partition partition = random_partition(problem.n, 1, 14);
  const QaoaParams params{{0.15}, {0.45}};
  ScmfConfig scmf;
  const double via_loop = objective(problem, partition, params, scmf);

  const Environment env{Basis::Spin, std::vector<double>(problem.n, 0.0)};
  const SubproblemSpec spec = make_subproblem(problem, partition, env, 0);
  const ExpectationSet set = expectations(run_qaoa(spec, params), spec);
  double direct = 0.0;
  for (std::size_t a = 0; a < spec.size(); ++a) {
    direct += spec.local_h[a] * set.one_body[a];
    for (std::size_t b = a + 1; b < spec.size(); ++b)
      direct += spec.coupling(a, b) * set.pair(a, b);
  }
  CHECK(via_loop == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("objective equals the tensor-product state energy") {
  const IsingProblem problem = break_z2_symmetry(generate_sk(13, 23)).problem;
  const Partition partition = random_partition(problem.n, 2, 24);
  const QaoaParams params = sk_heuristic_init(problem.n, 2, 1);
  ScmfConfig scmf;
  scmf.rng_seed = 25;
  // tight thresholds so the stored expectations match the final environment
  scmf.eps_env = 1e-12;
  scmf.eps_cost = 1e-12;
  scmf.max_iters = 20000;
  const ScmfResult run = run_self_consistency(problem, partition, params, scmf);
  REQUIRE(run.trace.converged);

  // rebuild the per-group states at the converged environment and contract
  // the full 2^12 product state against the diagonal cost
  const std::size_t n = problem.n;
  std::vector<SubproblemState> states(partition.k());
  for (std::size_t g = 0; g < partition.k(); ++g) {
    const SubproblemSpec spec = make_subproblem(problem, partition, run.env, g);
    states[g] = run_qaoa(spec, params);
  }
  double oracle = 0.0;
  std::vector<std::uint8_t> bits(n);
  for (std::size_t x = 0; x < (std::size_t(1) << n); ++x) {
    double probability = 1.0;
    for (std::size_t g = 0; g < partition.k(); ++g) {
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
  CHECK(run.energy == doctest::Approx(oracle).epsilon(1e-7));
}

TEST_CASE("optimize recovers the single-variable optimum") {
  IsingProblem problem = IsingProblem::zeros(1, Basis::Spin);
  problem.h = {1.0};
  const Partition partition = make_partition({{0}}, 1);
  OptimizerConfig optimizer;
  optimizer.max_evals = 300;
  optimizer.tol_x = 1e-6;
  optimizer.tol_f = 1e-10;
  ScmfConfig scmf;
  const OptimizeResult fit = optimize(problem, partition, 1, optimizer, scmf);
  CHECK(fit.energy == doctest::Approx(-1.0).epsilon(1e-4));
  CHECK(std::sin(2 * fit.params.betas[0]) * std::sin(2 * fit.params.gammas[0]) ==
        doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("optimize never exceeds its initial simplex best") {
  const IsingProblem problem = break_z2_symmetry(generate_sk(10, 33)).problem;
  const Partition partition = random_partition(problem.n, 2, 34);
  OptimizerConfig optimizer;
  optimizer.max_evals = 40;
  ScmfConfig scmf;
  scmf.rng_seed = 35;
  const OptimizeResult fit = optimize(problem, partition, 1, optimizer, scmf);
  REQUIRE(fit.trace.size() >= 3);
  CHECK(fit.energy <= fit.trace[2] + 1e-15);  // best of the 3-vertex simplex
  CHECK(fit.energy == doctest::Approx(fit.trace.back()));
}

TEST_CASE("optimize validates its inputs") {
  const IsingProblem problem = break_z2_symmetry(generate_sk(6, 43)).problem;
  const Partition partition = random_partition(problem.n, 1, 44);
  OptimizerConfig optimizer;
  optimizer.init = InitStrategy::Custom;
  optimizer.custom_init = QaoaParams{{0.1}, {0.1}};
  ScmfConfig scmf;
  CHECK_THROWS_AS(optimize(problem, partition, 2, optimizer, scmf),
                  std::invalid_argument);
  optimizer.init = InitStrategy::Grid;
  CHECK_THROWS_AS(optimize(problem, partition, 2, optimizer, scmf),
                  std::invalid_argument);
  CHECK_NOTHROW(optimize(problem, partition, 1, optimizer, scmf));
}

TEST_CASE("landscape scans") {
  const IsingProblem problem = break_z2_symmetry(generate_sk(10, 53)).problem;
  const Partition partition = random_partition(problem.n, 2, 54);
  ScmfConfig scmf;
  scmf.rng_seed = 55;

  SUBCASE("a 1x1 grid is a single objective value") {
    GridSpec grid;
    grid.gamma_min = grid.gamma_max = 0.2;
    grid.gamma_steps = 1;
    grid.beta_min = grid.beta_max = 0.5;
    grid.beta_steps = 1;
    const LandscapeGrid result = scan_landscape(problem, partition, grid, scmf);
    CHECK(result.energy.size() == 1);
    CHECK(result.at(0, 0) ==
          doctest::Approx(objective(problem, partition, {{0.2}, {0.5}}, scmf)));
  }

  SUBCASE("p=1 energies are invariant under the joint sign flip") {
    for (double gamma : {0.1, 0.23}) {
      for (double beta : {0.4, -0.6}) {
        const double plus =
            objective(problem, partition, {{gamma}, {beta}}, scmf);
        const double minus =
            objective(problem, partition, {{-gamma}, {-beta}}, scmf);
        CHECK(plus == doctest::Approx(minus).epsilon(1e-9));
      }
    }
  }

  SUBCASE("grids re-evaluate identically and stay smooth") {
    GridSpec grid;
    grid.gamma_min = 0.02;
    grid.gamma_max = 0.4;
    grid.gamma_steps = 9;
    grid.beta_min = 0.05;
    grid.beta_max = 1.5;
    grid.beta_steps = 9;
    const LandscapeGrid a = scan_landscape(problem, partition, grid, scmf, 2);
    const LandscapeGrid b = scan_landscape(problem, partition, grid, scmf, 1);
    CHECK(a.energy == b.energy);  // jobs must not change values

    double lo = 1e100, hi = -1e100, max_step = 0.0;
    for (double value : a.energy) {
      CHECK(std::isfinite(value));
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
    for (std::size_t gi = 0; gi < 9; ++gi)
      for (std::size_t bi = 0; bi + 1 < 9; ++bi)
        max_step = std::max(max_step, std::fabs(a.at(gi, bi + 1) - a.at(gi, bi)));
    CHECK(max_step <= 0.5 * (hi - lo));
  }

  SUBCASE("empty grids are rejected") {
    GridSpec grid;
    grid.gamma_steps = 0;
    CHECK_THROWS_AS(scan_landscape(problem, partition, grid, scmf),
                    std::invalid_argument);
  }
}

TEST_CASE("sk heuristic init") {
  const QaoaParams base = sk_heuristic_init(64, 1, 1);
  CHECK(base.gammas[0] == doctest::Approx(0.0625));
  CHECK(base.betas[0] == doctest::Approx(kPi / 8));

  CHECK(sk_heuristic_init(64, 2, 1).betas[0] == doctest::Approx(kPi / 8));
  CHECK(sk_heuristic_init(64, 64, 1).betas[0] == doctest::Approx(kPi / 4));

  const double beta_mid = sk_heuristic_init(64, 8, 1).betas[0];
  CHECK(beta_mid > kPi / 8);
  CHECK(beta_mid < kPi / 4);

  const QaoaParams deep = sk_heuristic_init(32, 2, 3);
  REQUIRE(deep.p() == 3);
  CHECK(deep.gammas[0] < deep.gammas[1]);
  CHECK(deep.gammas[1] < deep.gammas[2]);
  CHECK(deep.betas[0] > deep.betas[1]);
  CHECK(deep.betas[1] > deep.betas[2]);

  CHECK_THROWS_AS(sk_heuristic_init(0, 1, 1), std::invalid_argument);
}
