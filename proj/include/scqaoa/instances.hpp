#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "scqaoa/model.hpp"

namespace scqaoa {

// Weighted compatibility graph for the maximum weighted clique problem.
struct CliqueGraph {
  std::size_t n = 0;
  std::vector<double> weights;     // vertex weights, >= 0
  std::vector<std::uint8_t> adjacency;  // n*n, symmetric, zero diagonal

  bool edge(std::size_t i, std::size_t j) const {
    return adjacency[i * n + j] != 0;
  }
  void set_edge(std::size_t i, std::size_t j) {
    adjacency[i * n + j] = 1;
    adjacency[j * n + i] = 1;
  }
};

void validate_graph(const CliqueGraph& graph);

// Asymptotic ground-state energy density of SK instances (the Parisi
// constant): E_gs ~ P* n^{3/2} for large n. Reference scale for energy
// densities reported by the experiment harness.
inline constexpr double kParisiConstant = -0.7631;

// Sherrington-Kirkpatrick instance: spin basis, h = 0, couplings i.i.d.
// standard normal for i < j (no 1/sqrt(N) scaling). Deterministic per seed.
IsingProblem generate_sk(std::size_t n, std::uint64_t seed);

struct SymmetryBreakResult {
  IsingProblem problem;    // n-1 variables, h'_i = w_{i,n-1}
  std::size_t fixed_index; // always the last variable
  int fixed_value;         // always +1
};

// Substitutes Z on the last variable by +1. Requires spin basis and h = 0;
// the reduced spectrum equals the original spectrum restricted to that
// eigenvalue, so a ground state survives.
SymmetryBreakResult break_z2_symmetry(const IsingProblem& problem);

// Occupation-basis clique Hamiltonian: linear coefficients -h_i, couplings
// lambda on non-adjacent pairs, zero on adjacent pairs.
IsingProblem build_clique_problem(const CliqueGraph& graph, double lambda);

// Uniform random permutation chopped into k contiguous blocks of size
// floor(n/k) or ceil(n/k). Deterministic per seed.
Partition random_partition(std::size_t n, std::size_t k, std::uint64_t seed);

// Random Erdos-Renyi compatibility graph with uniform vertex weights in
// [weight_lo, weight_hi]. Experiment plumbing.
CliqueGraph random_clique_graph(std::size_t n, double edge_prob,
                                std::uint64_t seed, double weight_lo = 0.2,
                                double weight_hi = 1.0);

// JSON file formats (0-based indices):
//   graph:   {"n": int, "weights": [..], "edges": [[i, j], ..]}
//   problem: {"n": int, "basis": "spin"|"occupation", "h": [..],
//             "edges": [[i, j, w], ..]}
CliqueGraph load_graph(const std::string& path);
void save_graph(const CliqueGraph& graph, const std::string& path);
IsingProblem load_problem(const std::string& path);
void save_problem(const IsingProblem& problem, const std::string& path);

}  // namespace scqaoa
