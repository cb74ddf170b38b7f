#include "scqaoa/model.hpp"

#include <cmath>
#include <stdexcept>

namespace scqaoa {

std::string basis_name(Basis basis) {
  return basis == Basis::Spin ? "spin" : "occupation";
}

Basis basis_from_name(const std::string& name) {
  if (name == "spin") return Basis::Spin;
  if (name == "occupation") return Basis::Occupation;
  throw std::invalid_argument("unknown basis '" + name +
                              "' (expected 'spin' or 'occupation')");
}

IsingProblem IsingProblem::zeros(std::size_t n, Basis basis) {
  IsingProblem problem;
  problem.n = n;
  problem.basis = basis;
  problem.h.assign(n, 0.0);
  problem.w.assign(n * n, 0.0);
  return problem;
}

void validate_problem(const IsingProblem& problem) {
  const std::size_t n = problem.n;
  if (problem.h.size() != n)
    throw std::invalid_argument("problem: h has length " +
                                std::to_string(problem.h.size()) +
                                ", expected " + std::to_string(n));
  if (problem.w.size() != n * n)
    throw std::invalid_argument("problem: coupling matrix must be n*n");
  for (std::size_t i = 0; i < n; ++i) {
    if (problem.w[i * n + i] != 0.0)
      throw std::invalid_argument("problem: nonzero diagonal coupling at " +
                                  std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (problem.w[i * n + j] != problem.w[j * n + i])
        throw std::invalid_argument("problem: asymmetric coupling at (" +
                                    std::to_string(i) + "," +
                                    std::to_string(j) + ")");
    }
  }
}

Partition make_partition(std::vector<std::vector<std::size_t>> groups,
                         std::size_t n) {
  if (groups.empty()) throw std::invalid_argument("partition: no groups");
  const std::size_t k = groups.size();
  const std::size_t lo = n / k;
  const std::size_t hi = lo + (n % k == 0 ? 0 : 1);
  Partition partition;
  partition.group_of.assign(n, k);
  std::size_t covered = 0;
  for (std::size_t g = 0; g < k; ++g) {
    const auto& group = groups[g];
    if (group.size() != lo && group.size() != hi)
      throw std::invalid_argument("partition: group " + std::to_string(g) +
                                  " has size " + std::to_string(group.size()) +
                                  ", expected " + std::to_string(lo) + " or " +
                                  std::to_string(hi));
    for (std::size_t index : group) {
      if (index >= n)
        throw std::invalid_argument("partition: index out of range");
      if (partition.group_of[index] != k)
        throw std::invalid_argument("partition: index " +
                                    std::to_string(index) +
                                    " appears in two groups");
      partition.group_of[index] = g;
      ++covered;
    }
  }
  if (covered != n)
    throw std::invalid_argument("partition: groups do not cover all indices");
  partition.groups = std::move(groups);
  return partition;
}

void validate_environment(const Environment& env, std::size_t n) {
  if (env.e.size() != n)
    throw std::invalid_argument("environment: length mismatch");
  const double lo = env.basis == Basis::Spin ? -1.0 : 0.0;
  for (double value : env.e) {
    if (!(value >= lo - 1e-12 && value <= 1.0 + 1e-12))
      throw std::invalid_argument("environment: entry out of basis range");
  }
}

void validate_params(const QaoaParams& params) {
  if (params.gammas.empty() || params.gammas.size() != params.betas.size())
    throw std::invalid_argument("params: need p >= 1 with len(gammas) == len(betas)");
}

namespace {

inline double variable_value(Basis basis, std::uint8_t bit) {
  return basis == Basis::Spin ? 1.0 - 2.0 * bit : static_cast<double>(bit);
}

}  // namespace

double classical_energy(const IsingProblem& problem,
                        const std::vector<std::uint8_t>& assignment) {
  if (assignment.size() != problem.n)
    throw std::invalid_argument("classical_energy: assignment length " +
                                std::to_string(assignment.size()) +
                                " != n = " + std::to_string(problem.n));
  const std::size_t n = problem.n;
  double energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double vi = variable_value(problem.basis, assignment[i]);
    if (vi == 0.0) continue;
    double local = problem.h[i];
    for (std::size_t j = i + 1; j < n; ++j)
      local += problem.w[i * n + j] * variable_value(problem.basis, assignment[j]);
    energy += vi * local;
  }
  return energy;
}

std::vector<double> effective_fields(const IsingProblem& problem,
                                     const Partition& partition,
                                     const Environment& env, std::size_t k) {
  if (env.basis != problem.basis)
    throw std::invalid_argument("effective_fields: environment basis mismatch");
  if (env.e.size() != problem.n)
    throw std::invalid_argument("effective_fields: environment length mismatch");
  if (k >= partition.k())
    throw std::invalid_argument("effective_fields: group index out of range");
  const std::size_t n = problem.n;
  const auto& group = partition.groups[k];
  std::vector<double> dressed(group.size());
  for (std::size_t a = 0; a < group.size(); ++a) {
    const std::size_t i = group[a];
    double value = problem.h[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (partition.group_of[j] == k) continue;
      value += problem.w[i * n + j] * env.e[j];
    }
    dressed[a] = value;
  }
  return dressed;
}

namespace {

struct EnergySplit {
  double intra = 0.0;  // fields + same-group pairs
  double inter = 0.0;  // cross-group pairs through one-body products
};

EnergySplit split_energy(const IsingProblem& problem, const Partition& partition,
                         const std::vector<ExpectationSet>& expectations) {
  const std::size_t n = problem.n;
  if (expectations.size() != partition.k())
    throw std::invalid_argument("factorized_energy: one ExpectationSet per group required");
  // position of each variable inside its group
  std::vector<std::size_t> pos(n);
  for (std::size_t g = 0; g < partition.k(); ++g) {
    const auto& group = partition.groups[g];
    if (expectations[g].one_body.size() != group.size() ||
        expectations[g].two_body.size() != group.size() * group.size())
      throw std::invalid_argument("factorized_energy: expectation sizes do not match partition");
    for (std::size_t a = 0; a < group.size(); ++a) pos[group[a]] = a;
  }

  EnergySplit split;
  for (std::size_t i = 0; i < n; ++i)
    split.intra += problem.h[i] * expectations[partition.group_of[i]].one_body[pos[i]];
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t gi = partition.group_of[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double wij = problem.w[i * n + j];
      if (wij == 0.0) continue;
      const std::size_t gj = partition.group_of[j];
      if (gi == gj) {
        split.intra += wij * expectations[gi].pair(pos[i], pos[j]);
      } else {
        split.inter += wij * expectations[gi].one_body[pos[i]] *
                       expectations[gj].one_body[pos[j]];
      }
    }
  }
  return split;
}

}  // namespace

double factorized_energy(const IsingProblem& problem,
                         const Partition& partition,
                         const std::vector<ExpectationSet>& expectations) {
  const EnergySplit split = split_energy(problem, partition, expectations);
  return split.intra + split.inter;
}

double intra_energy_fraction(const IsingProblem& problem,
                             const Partition& partition,
                             const std::vector<ExpectationSet>& expectations,
                             double tolerance) {
  const EnergySplit split = split_energy(problem, partition, expectations);
  const double total = split.intra + split.inter;
  if (std::fabs(total) < tolerance)
    throw std::domain_error("intra_energy_fraction: total energy magnitude below tolerance");
  return split.intra / total;
}

std::pair<IsingProblem, double> spin_from_occupation(const IsingProblem& problem) {
  if (problem.basis != Basis::Occupation)
    throw std::invalid_argument("spin_from_occupation: problem is not occupation-basis");
  const std::size_t n = problem.n;
  IsingProblem spin = IsingProblem::zeros(n, Basis::Spin);
  double offset = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += problem.w[i * n + j];
    spin.h[i] = -0.5 * problem.h[i] - 0.25 * row;
    offset += 0.5 * problem.h[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      spin.w[i * n + j] = spin.w[j * n + i] = 0.25 * problem.w[i * n + j];
      offset += 0.25 * problem.w[i * n + j];
    }
  }
  return {std::move(spin), offset};
}

std::pair<IsingProblem, double> occupation_from_spin(const IsingProblem& problem) {
  if (problem.basis != Basis::Spin)
    throw std::invalid_argument("occupation_from_spin: problem is not spin-basis");
  const std::size_t n = problem.n;
  IsingProblem occ = IsingProblem::zeros(n, Basis::Occupation);
  double offset = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += problem.w[i * n + j];
    occ.h[i] = -2.0 * problem.h[i] - 2.0 * row;
    offset += problem.h[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      occ.w[i * n + j] = occ.w[j * n + i] = 4.0 * problem.w[i * n + j];
      offset += problem.w[i * n + j];
    }
  }
  return {std::move(occ), offset};
}

}  // namespace scqaoa
