#include "scqaoa/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "scqaoa/rng.hpp"

namespace scqaoa {

namespace {

constexpr double kWeightEpsilon = 1e-12;

// index into `candidates` drawn with probability proportional to weight + eps
std::size_t weighted_pick(const std::vector<std::size_t>& candidates,
                          const std::vector<double>& weights, Rng& rng) {
  double total = 0.0;
  for (std::size_t v : candidates) total += weights[v] + kWeightEpsilon;
  const double target = rng.uniform01() * total;
  double running = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    running += weights[candidates[i]] + kWeightEpsilon;
    if (target < running) return i;
  }
  return candidates.size() - 1;
}

}  // namespace

std::vector<std::vector<std::uint8_t>> concatenate_global(
    const SolutionPool& pool, std::size_t count, std::uint64_t seed) {
  const std::size_t k = pool.partition.k();
  if (pool.samples.size() != k)
    throw std::invalid_argument("concatenate_global: one pool per subproblem required");
  for (std::size_t g = 0; g < k; ++g) {
    if (pool.samples[g].empty())
      throw std::invalid_argument("concatenate_global: empty pool for subproblem " +
                                  std::to_string(g));
    for (const auto& bits : pool.samples[g])
      if (bits.size() != pool.partition.groups[g].size())
        throw std::invalid_argument("concatenate_global: local sample length mismatch");
  }

  Rng rng(seed);
  std::vector<std::vector<std::uint8_t>> out(count);
  for (auto& global : out) {
    global.assign(pool.partition.n(), 0);
    for (std::size_t g = 0; g < k; ++g) {
      const auto& bits =
          pool.samples[g][rng.uniform_index(pool.samples[g].size())];
      const auto& group = pool.partition.groups[g];
      for (std::size_t a = 0; a < group.size(); ++a) global[group[a]] = bits[a];
    }
  }
  return out;
}

bool is_clique(const CliqueGraph& graph,
               const std::vector<std::uint8_t>& assignment) {
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < graph.n; ++i)
    if (assignment[i]) selected.push_back(i);
  for (std::size_t a = 0; a < selected.size(); ++a)
    for (std::size_t b = a + 1; b < selected.size(); ++b)
      if (!graph.edge(selected[a], selected[b])) return false;
  return true;
}

double clique_weight(const CliqueGraph& graph,
                     const std::vector<std::uint8_t>& assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < graph.n; ++i)
    if (assignment[i]) total += graph.weights[i];
  return total;
}

std::vector<std::uint8_t> greedy_clique_repair(
    const CliqueGraph& graph, const std::vector<std::uint8_t>& assignment,
    std::uint64_t seed) {
  if (assignment.size() != graph.n)
    throw std::invalid_argument("greedy_clique_repair: assignment length mismatch");
  std::vector<std::uint8_t> current = assignment;
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < graph.n; ++i)
    if (current[i]) selected.push_back(i);

  Rng rng(seed);
  while (true) {
    // induced degrees and clique check in one pass
    std::vector<std::size_t> degree(selected.size(), 0);
    bool clique = true;
    for (std::size_t a = 0; a < selected.size(); ++a)
      for (std::size_t b = a + 1; b < selected.size(); ++b) {
        if (graph.edge(selected[a], selected[b])) {
          ++degree[a];
          ++degree[b];
        } else {
          clique = false;
        }
      }
    if (clique) break;

    std::size_t min_degree = std::numeric_limits<std::size_t>::max();
    for (std::size_t value : degree) min_degree = std::min(min_degree, value);
    std::vector<std::size_t> pool;  // positions in `selected`
    for (std::size_t a = 0; a < selected.size(); ++a)
      if (degree[a] == min_degree) pool.push_back(a);
    double min_weight = std::numeric_limits<double>::infinity();
    for (std::size_t a : pool)
      min_weight = std::min(min_weight, graph.weights[selected[a]]);
    std::vector<std::size_t> tied;
    for (std::size_t a : pool)
      if (graph.weights[selected[a]] == min_weight) tied.push_back(a);
    const std::size_t victim =
        tied[tied.size() == 1 ? 0 : rng.uniform_index(tied.size())];

    current[selected[victim]] = 0;
    selected.erase(selected.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  return current;
}

std::vector<std::uint8_t> clique_local_search(
    const CliqueGraph& graph, const std::vector<std::uint8_t>& clique,
    std::size_t iters, std::uint64_t seed) {
  if (clique.size() != graph.n)
    throw std::invalid_argument("clique_local_search: assignment length mismatch");
  if (!is_clique(graph, clique))
    throw std::invalid_argument("clique_local_search: input does not induce a clique");

  std::vector<std::uint8_t> current = clique;
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < graph.n; ++i)
    if (current[i]) members.push_back(i);

  std::vector<std::uint8_t> best = current;
  double best_weight = clique_weight(graph, current);
  double weight = best_weight;
  Rng rng(seed);

  for (std::size_t iter = 0; iter < iters; ++iter) {
    std::vector<std::size_t> add_pool;
    std::vector<std::size_t> swap_pool;
    std::vector<std::size_t> swap_partner;  // the single non-neighbor
    for (std::size_t v = 0; v < graph.n; ++v) {
      if (current[v]) continue;
      std::size_t missing = graph.n;  // sentinel
      std::size_t missing_count = 0;
      for (std::size_t u : members) {
        if (!graph.edge(v, u)) {
          missing = u;
          if (++missing_count > 1) break;
        }
      }
      if (missing_count == 0) {
        add_pool.push_back(v);
      } else if (missing_count == 1) {
        swap_pool.push_back(v);
        swap_partner.push_back(missing);
      }
    }

    if (!add_pool.empty()) {
      const std::size_t v = add_pool[weighted_pick(add_pool, graph.weights, rng)];
      current[v] = 1;
      members.push_back(v);
      weight += graph.weights[v];
    } else if (!swap_pool.empty()) {
      const std::size_t pick = weighted_pick(swap_pool, graph.weights, rng);
      const std::size_t incoming = swap_pool[pick];
      const std::size_t outgoing = swap_partner[pick];
      current[outgoing] = 0;
      current[incoming] = 1;
      members.erase(std::find(members.begin(), members.end(), outgoing));
      members.push_back(incoming);
      weight += graph.weights[incoming] - graph.weights[outgoing];
    } else {
      break;  // no move available; pools depend only on the clique
    }
    if (weight > best_weight) {
      best_weight = weight;
      best = current;
    }
  }
  return best;
}

AnnealSchedule default_schedule(const IsingProblem& problem,
                                std::uint64_t seed) {
  Rng rng(derive_seed(seed, "sa-scale"));
  const std::size_t probes = 64;
  std::vector<std::uint8_t> bits(problem.n);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t trial = 0; trial < probes; ++trial) {
    for (auto& bit : bits) bit = static_cast<std::uint8_t>(rng.uniform_index(2));
    const double energy = classical_energy(problem, bits);
    sum += energy;
    sum_sq += energy * energy;
  }
  const double mean = sum / probes;
  const double variance = std::max(0.0, sum_sq / probes - mean * mean);

  AnnealSchedule schedule;
  schedule.t_initial = std::max(2.0 * std::sqrt(variance), 1e-2);
  schedule.t_final = 1e-2;
  schedule.sweeps = 1000;
  schedule.moves_per_sweep = problem.n;
  schedule.seed = seed;
  return schedule;
}

std::pair<std::vector<std::uint8_t>, double> simulated_annealing(
    const IsingProblem& problem, const AnnealSchedule& schedule) {
  if (schedule.t_initial <= 0.0 || schedule.t_final <= 0.0 ||
      schedule.t_initial < schedule.t_final)
    throw std::invalid_argument("simulated_annealing: bad temperature range");
  const std::size_t n = problem.n;
  const std::size_t moves =
      schedule.moves_per_sweep > 0 ? schedule.moves_per_sweep : n;

  Rng rng(schedule.seed);
  std::vector<std::uint8_t> bits(n);
  for (auto& bit : bits) bit = static_cast<std::uint8_t>(rng.uniform_index(2));
  double energy = classical_energy(problem, bits);
  std::vector<std::uint8_t> best = bits;
  double best_energy = energy;

  const double ratio = schedule.t_final / schedule.t_initial;
  for (std::size_t sweep = 0; sweep < schedule.sweeps; ++sweep) {
    const double progress =
        schedule.sweeps == 1
            ? 0.0
            : static_cast<double>(sweep) / static_cast<double>(schedule.sweeps - 1);
    const double temperature = schedule.t_initial * std::pow(ratio, progress);
    for (std::size_t move = 0; move < moves; ++move) {
      const std::size_t i = rng.uniform_index(n);
      double local = problem.h[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double vj = problem.basis == Basis::Spin
                              ? 1.0 - 2.0 * bits[j]
                              : static_cast<double>(bits[j]);
        local += problem.w[i * n + j] * vj;
      }
      const double vi = problem.basis == Basis::Spin
                            ? 1.0 - 2.0 * bits[i]
                            : static_cast<double>(bits[i]);
      const double vi_flipped =
          problem.basis == Basis::Spin ? -vi : 1.0 - vi;
      const double delta = (vi_flipped - vi) * local;
      if (delta <= 0.0 || rng.uniform01() < std::exp(-delta / temperature)) {
        bits[i] ^= 1u;
        energy += delta;
        if (energy < best_energy) {
          best_energy = energy;
          best = bits;
        }
      }
    }
  }
  return {std::move(best), best_energy};
}

std::pair<std::vector<std::uint8_t>, double> brute_force(
    const IsingProblem& problem, std::size_t cap) {
  const std::size_t n = problem.n;
  if (n > cap)
    throw std::length_error("brute_force: n = " + std::to_string(n) +
                            " exceeds cap " + std::to_string(cap));
  if (n == 0) return {{}, 0.0};

  // Enumerate in lexicographic order of the assignment (bit 0 most
  // significant), so the first strict improvement is the lex-lowest optimum.
  // Energy is updated per flipped bit; candidates near the record are
  // recomputed exactly before accepting.
  std::vector<std::uint8_t> bits(n, 0);
  auto value_of = [&](std::size_t i) {
    return problem.basis == Basis::Spin ? 1.0 - 2.0 * bits[i]
                                        : static_cast<double>(bits[i]);
  };
  double energy = classical_energy(problem, bits);
  std::vector<std::uint8_t> best_bits = bits;
  double best_energy = energy;

  const std::size_t total = std::size_t(1) << n;
  for (std::size_t x = 1; x < total; ++x) {
    const std::size_t changed = x ^ (x - 1);  // low bits that flip
    for (std::size_t b = 0; b < n; ++b) {
      if (((changed >> b) & 1u) == 0) continue;
      const std::size_t i = n - 1 - b;  // bit 0 of x = last assignment entry
      double local = problem.h[i];
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) local += problem.w[i * n + j] * value_of(j);
      const double before = value_of(i);
      bits[i] ^= 1u;
      energy += (value_of(i) - before) * local;
    }
    if (energy < best_energy - 1e-9) {
      best_energy = classical_energy(problem, bits);
      best_bits = bits;
    } else if (energy < best_energy + 1e-9) {
      const double exact = classical_energy(problem, bits);
      if (exact < best_energy) {
        best_energy = exact;
        best_bits = bits;
      }
    }
  }
  return {std::move(best_bits), best_energy};
}

std::pair<std::vector<std::uint8_t>, double> greedy_descent(
    const IsingProblem& problem, std::uint64_t seed) {
  const std::size_t n = problem.n;
  Rng rng(seed);
  std::vector<std::uint8_t> bits(n);
  for (auto& bit : bits) bit = static_cast<std::uint8_t>(rng.uniform_index(2));
  double energy = classical_energy(problem, bits);

  while (true) {
    double best_delta = 0.0;
    std::size_t best_index = n;
    for (std::size_t i = 0; i < n; ++i) {
      double local = problem.h[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double vj = problem.basis == Basis::Spin
                              ? 1.0 - 2.0 * bits[j]
                              : static_cast<double>(bits[j]);
        local += problem.w[i * n + j] * vj;
      }
      const double vi = problem.basis == Basis::Spin
                            ? 1.0 - 2.0 * bits[i]
                            : static_cast<double>(bits[i]);
      const double vi_flipped =
          problem.basis == Basis::Spin ? -vi : 1.0 - vi;
      const double delta = (vi_flipped - vi) * local;
      if (delta < best_delta) {
        best_delta = delta;
        best_index = i;
      }
    }
    if (best_index == n) break;
    bits[best_index] ^= 1u;
    energy += best_delta;
  }
  return {std::move(bits), classical_energy(problem, bits)};
}

}  // namespace scqaoa
