#include "scqaoa/instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "scqaoa/rng.hpp"

namespace scqaoa {

using nlohmann::json;

void validate_graph(const CliqueGraph& graph) {
  const std::size_t n = graph.n;
  if (graph.weights.size() != n)
    throw std::invalid_argument("graph: weights length mismatch");
  if (graph.adjacency.size() != n * n)
    throw std::invalid_argument("graph: adjacency must be n*n");
  for (std::size_t i = 0; i < n; ++i) {
    if (graph.weights[i] < 0.0)
      throw std::invalid_argument("graph: negative weight at vertex " +
                                  std::to_string(i));
    if (graph.adjacency[i * n + i] != 0)
      throw std::invalid_argument("graph: self-loop at vertex " +
                                  std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (graph.adjacency[i * n + j] != graph.adjacency[j * n + i])
        throw std::invalid_argument("graph: asymmetric adjacency at (" +
                                    std::to_string(i) + "," +
                                    std::to_string(j) + ")");
    }
  }
}

IsingProblem generate_sk(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generate_sk: need n >= 2");
  Rng rng(seed);
  IsingProblem problem = IsingProblem::zeros(n, Basis::Spin);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      problem.set_coupling(i, j, rng.normal());
  return problem;
}

SymmetryBreakResult break_z2_symmetry(const IsingProblem& problem) {
  if (problem.basis != Basis::Spin)
    throw std::invalid_argument("break_z2_symmetry: spin basis required");
  for (double field : problem.h)
    if (field != 0.0)
      throw std::invalid_argument("break_z2_symmetry: requires h = 0");
  if (problem.n < 2)
    throw std::invalid_argument("break_z2_symmetry: need n >= 2");

  const std::size_t n = problem.n;
  const std::size_t last = n - 1;
  IsingProblem reduced = IsingProblem::zeros(last, Basis::Spin);
  for (std::size_t i = 0; i < last; ++i) {
    reduced.h[i] = problem.w[i * n + last];
    for (std::size_t j = i + 1; j < last; ++j)
      reduced.w[i * last + j] = reduced.w[j * last + i] = problem.w[i * n + j];
  }
  return {std::move(reduced), last, +1};
}

IsingProblem build_clique_problem(const CliqueGraph& graph, double lambda) {
  validate_graph(graph);
  if (lambda < 0.0)
    throw std::invalid_argument("build_clique_problem: lambda must be >= 0");
  const std::size_t n = graph.n;
  IsingProblem problem = IsingProblem::zeros(n, Basis::Occupation);
  for (std::size_t i = 0; i < n; ++i) {
    problem.h[i] = -graph.weights[i];
    for (std::size_t j = i + 1; j < n; ++j)
      if (!graph.edge(i, j)) problem.set_coupling(i, j, lambda);
  }
  return problem;
}

Partition random_partition(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 1 || k > n)
    throw std::invalid_argument("random_partition: need 1 <= k <= n");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = rng.uniform_index(i);
    std::swap(order[i - 1], order[j]);
  }
  const std::size_t base = n / k;
  const std::size_t extra = n % k;  // first `extra` groups get one more
  std::vector<std::vector<std::size_t>> groups(k);
  std::size_t cursor = 0;
  for (std::size_t g = 0; g < k; ++g) {
    const std::size_t size = base + (g < extra ? 1 : 0);
    groups[g].assign(order.begin() + cursor, order.begin() + cursor + size);
    cursor += size;
  }
  return make_partition(std::move(groups), n);
}

CliqueGraph random_clique_graph(std::size_t n, double edge_prob,
                                std::uint64_t seed, double weight_lo,
                                double weight_hi) {
  if (n == 0) throw std::invalid_argument("random_clique_graph: need n >= 1");
  if (weight_lo < 0.0 || weight_hi < weight_lo)
    throw std::invalid_argument("random_clique_graph: bad weight range");
  Rng rng(seed);
  CliqueGraph graph;
  graph.n = n;
  graph.weights.resize(n);
  graph.adjacency.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    graph.weights[i] = rng.uniform(weight_lo, weight_hi);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform01() < edge_prob) graph.set_edge(i, j);
  return graph;
}

namespace {

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& err) {
    throw std::runtime_error("parse failure in '" + path + "': " + err.what());
  }
  return doc;
}

void write_file(const json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace

CliqueGraph load_graph(const std::string& path) {
  const json doc = parse_file(path);
  CliqueGraph graph;
  try {
    graph.n = doc.at("n").get<std::size_t>();
    graph.weights = doc.at("weights").get<std::vector<double>>();
    graph.adjacency.assign(graph.n * graph.n, 0);
    for (const auto& edge : doc.at("edges")) {
      if (!edge.is_array() || edge.size() != 2)
        throw std::runtime_error("graph edge entries must be [i, j]");
      const std::size_t i = edge[0].get<std::size_t>();
      const std::size_t j = edge[1].get<std::size_t>();
      if (i >= graph.n || j >= graph.n || i == j)
        throw std::runtime_error("graph edge (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") out of range");
      graph.set_edge(i, j);
    }
  } catch (const json::exception& err) {
    throw std::runtime_error("bad graph file '" + path + "': " + err.what());
  }
  validate_graph(graph);
  return graph;
}

void save_graph(const CliqueGraph& graph, const std::string& path) {
  validate_graph(graph);
  json edges = json::array();
  for (std::size_t i = 0; i < graph.n; ++i)
    for (std::size_t j = i + 1; j < graph.n; ++j)
      if (graph.edge(i, j)) edges.push_back({i, j});
  write_file({{"n", graph.n}, {"weights", graph.weights}, {"edges", edges}},
             path);
}

IsingProblem load_problem(const std::string& path) {
  const json doc = parse_file(path);
  IsingProblem problem;
  try {
    problem.n = doc.at("n").get<std::size_t>();
    problem.basis = basis_from_name(doc.at("basis").get<std::string>());
    problem.h = doc.at("h").get<std::vector<double>>();
    problem.w.assign(problem.n * problem.n, 0.0);
    for (const auto& edge : doc.at("edges")) {
      if (!edge.is_array() || edge.size() != 3)
        throw std::runtime_error("problem edge entries must be [i, j, w]");
      const std::size_t i = edge[0].get<std::size_t>();
      const std::size_t j = edge[1].get<std::size_t>();
      if (i >= problem.n || j >= problem.n || i == j)
        throw std::runtime_error("problem edge (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") out of range");
      problem.set_coupling(i, j, edge[2].get<double>());
    }
  } catch (const json::exception& err) {
    throw std::runtime_error("bad problem file '" + path + "': " + err.what());
  }
  validate_problem(problem);
  return problem;
}

void save_problem(const IsingProblem& problem, const std::string& path) {
  validate_problem(problem);
  json edges = json::array();
  for (std::size_t i = 0; i < problem.n; ++i)
    for (std::size_t j = i + 1; j < problem.n; ++j)
      if (problem.w[i * problem.n + j] != 0.0)
        edges.push_back({i, j, problem.w[i * problem.n + j]});
  write_file({{"n", problem.n},
              {"basis", basis_name(problem.basis)},
              {"h", problem.h},
              {"edges", edges}},
             path);
}

}  // namespace scqaoa
