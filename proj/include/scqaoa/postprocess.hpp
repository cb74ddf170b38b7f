#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "scqaoa/instances.hpp"
#include "scqaoa/model.hpp"

namespace scqaoa {

// Per-subproblem pools of sampled local bit strings plus the partition that
// maps local bits to global positions.
struct SolutionPool {
  Partition partition;
  std::vector<std::vector<std::vector<std::uint8_t>>> samples;  // [group][sample]
};

// Draws one local sample per subproblem (uniform over its pool) and scatters
// the bits to global positions. Deterministic per seed.
std::vector<std::vector<std::uint8_t>> concatenate_global(
    const SolutionPool& pool, std::size_t count, std::uint64_t seed);

bool is_clique(const CliqueGraph& graph,
               const std::vector<std::uint8_t>& assignment);
double clique_weight(const CliqueGraph& graph,
                     const std::vector<std::uint8_t>& assignment);

// Removes vertices until the selection induces a clique: repeatedly drop the
// selected vertex of minimum induced degree, ties broken by lowest weight,
// remaining ties by seeded coin flip.
std::vector<std::uint8_t> greedy_clique_repair(
    const CliqueGraph& graph, const std::vector<std::uint8_t>& assignment,
    std::uint64_t seed = 0);

// Weighted local search from a valid clique: add an external vertex adjacent
// to every member (chosen with probability proportional to its weight) when
// possible, otherwise swap in a vertex adjacent to all but one member. Every
// proposed move is taken; returns the heaviest clique visited.
std::vector<std::uint8_t> clique_local_search(
    const CliqueGraph& graph, const std::vector<std::uint8_t>& clique,
    std::size_t iters, std::uint64_t seed);

struct AnnealSchedule {
  double t_initial = 1.0;
  double t_final = 1e-2;
  std::size_t sweeps = 1000;
  std::size_t moves_per_sweep = 0;  // 0 -> problem size
  std::uint64_t seed = 0;
};

// Scale-aware defaults: T0 = 2 * stddev of random-assignment energies.
AnnealSchedule default_schedule(const IsingProblem& problem,
                                std::uint64_t seed);

// Single-bit-flip Metropolis with geometric temperature interpolation;
// returns the best assignment seen and its classical energy.
std::pair<std::vector<std::uint8_t>, double> simulated_annealing(
    const IsingProblem& problem, const AnnealSchedule& schedule);

// Exhaustive minimum of classical_energy; ties resolved toward the lowest
// lexicographic assignment. Throws std::length_error above the cap.
std::pair<std::vector<std::uint8_t>, double> brute_force(
    const IsingProblem& problem, std::size_t cap = 24);

// Steepest-descent single-bit flips from a random assignment down to a
// 1-flip-stable local minimum.
std::pair<std::vector<std::uint8_t>, double> greedy_descent(
    const IsingProblem& problem, std::uint64_t seed);

}  // namespace scqaoa
