#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <vector>

#include "scqaoa/instances.hpp"
#include "scqaoa/model.hpp"
#include "scqaoa/rng.hpp"

using namespace scqaoa;
namespace fs = std::filesystem;

namespace {

// recursive enumeration, independent of the library's search code
void enumerate_min(const IsingProblem& problem, std::vector<std::uint8_t>& bits,
                   std::size_t index, double& best) {
  if (index == problem.n) {
    double energy = 0.0;
    for (std::size_t i = 0; i < problem.n; ++i) {
      const double vi = problem.basis == Basis::Spin ? 1.0 - 2.0 * bits[i]
                                                     : double(bits[i]);
      energy += problem.h[i] * vi;
      for (std::size_t j = i + 1; j < problem.n; ++j) {
        const double vj = problem.basis == Basis::Spin ? 1.0 - 2.0 * bits[j]
                                                       : double(bits[j]);
        energy += problem.coupling(i, j) * vi * vj;
      }
    }
    best = std::min(best, energy);
    return;
  }
  bits[index] = 0;
  enumerate_min(problem, bits, index + 1, best);
  bits[index] = 1;
  enumerate_min(problem, bits, index + 1, best);
}

double brute_minimum(const IsingProblem& problem) {
  std::vector<std::uint8_t> bits(problem.n, 0);
  double best = 1e100;
  enumerate_min(problem, bits, 0, best);
  return best;
}

fs::path temp_file(const char* name) {
  return fs::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("the SK density reference constant is pinned") {
  CHECK(kParisiConstant == -0.7631);
}

TEST_CASE("SK generator structure and determinism") {
  const IsingProblem two = generate_sk(2, 7);
  CHECK(two.n == 2);
  CHECK(two.basis == Basis::Spin);
  CHECK(two.h == std::vector<double>{0.0, 0.0});
  CHECK(two.coupling(0, 1) != 0.0);
  CHECK(two.coupling(0, 1) == two.coupling(1, 0));

  const IsingProblem a = generate_sk(32, 123);
  const IsingProblem b = generate_sk(32, 123);
  CHECK(a.w == b.w);  // byte-identical
  const IsingProblem c = generate_sk(32, 124);
  CHECK(a.w != c.w);

  CHECK_THROWS_AS(generate_sk(1, 0), std::invalid_argument);
}

TEST_CASE("SK couplings are standard normal") {
  const IsingProblem problem = generate_sk(128, 99);
  std::vector<double> samples;
  for (std::size_t i = 0; i < 128; ++i)
    for (std::size_t j = i + 1; j < 128; ++j)
      samples.push_back(problem.coupling(i, j));
  const double m = static_cast<double>(samples.size());  // 8128 draws
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= m;
  double var = 0.0;
  for (double x : samples) var += (x - mean) * (x - mean);
  var /= m - 1.0;
  CHECK(std::fabs(mean) <= 3.0 / std::sqrt(m));
  CHECK(var == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("SK invariants hold for many seeds") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const IsingProblem problem = generate_sk(16, seed);
    for (std::size_t i = 0; i < 16; ++i) {
      CHECK(problem.h[i] == 0.0);
      CHECK(problem.coupling(i, i) == 0.0);
      for (std::size_t j = i + 1; j < 16; ++j)
        CHECK(problem.coupling(i, j) == problem.coupling(j, i));
    }
  }
}

TEST_CASE("symmetry breaking substitutes the last variable") {
  SUBCASE("n=2 reduces to a single field") {
    IsingProblem problem = IsingProblem::zeros(2, Basis::Spin);
    problem.set_coupling(0, 1, -0.75);
    const auto result = break_z2_symmetry(problem);
    CHECK(result.problem.n == 1);
    CHECK(result.problem.h[0] == doctest::Approx(-0.75));
    CHECK(result.fixed_index == 1);
    CHECK(result.fixed_value == 1);
  }
  SUBCASE("ground-state energy is preserved") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const IsingProblem problem = generate_sk(10, seed);
      const auto reduced = break_z2_symmetry(problem).problem;
      CHECK(brute_minimum(problem) ==
            doctest::Approx(brute_minimum(reduced)).epsilon(1e-10));
    }
  }
  SUBCASE("the reduced problem loses the flip symmetry") {
    const auto reduced = break_z2_symmetry(generate_sk(8, 3)).problem;
    const std::vector<std::uint8_t> bits{1, 0, 0, 1, 1, 0, 1};
    std::vector<std::uint8_t> flipped(7);
    for (std::size_t i = 0; i < 7; ++i) flipped[i] = bits[i] ^ 1u;
    CHECK(classical_energy(reduced, bits) !=
          doctest::Approx(classical_energy(reduced, flipped)));
  }
  SUBCASE("nonzero fields are rejected") {
    IsingProblem problem = IsingProblem::zeros(3, Basis::Spin);
    problem.h[0] = 0.1;
    CHECK_THROWS_AS(break_z2_symmetry(problem), std::invalid_argument);
  }
}

TEST_CASE("clique problem construction") {
  SUBCASE("complete graph carries no penalties") {
    CliqueGraph graph;
    graph.n = 4;
    graph.weights = {1.0, 2.0, 0.5, 1.5};
    graph.adjacency.assign(16, 0);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) graph.set_edge(i, j);
    const IsingProblem problem = build_clique_problem(graph, 5.0);
    for (double w : problem.w) CHECK(w == 0.0);
    CHECK(classical_energy(problem, {1, 1, 1, 1}) == doctest::Approx(-5.0));
    CHECK(brute_minimum(problem) == doctest::Approx(-5.0));
  }
  SUBCASE("two disconnected vertices") {
    CliqueGraph graph;
    graph.n = 2;
    graph.weights = {1.0, 1.0};
    graph.adjacency.assign(4, 0);
    const IsingProblem problem = build_clique_problem(graph, 3.0);
    CHECK(classical_energy(problem, {1, 1}) == doctest::Approx(1.0));
    CHECK(classical_energy(problem, {1, 0}) == doctest::Approx(-1.0));
    CHECK(classical_energy(problem, {0, 1}) == doctest::Approx(-1.0));
    CHECK(classical_energy(problem, {0, 0}) == doctest::Approx(0.0));
    CHECK(brute_minimum(problem) == doctest::Approx(-1.0));
  }
  SUBCASE("sufficient penalties make every ground state a clique") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const CliqueGraph graph = random_clique_graph(12, 0.45, seed);
      double max_h = 0.0;
      for (double w : graph.weights) max_h = std::max(max_h, w);
      const IsingProblem problem = build_clique_problem(graph, 2.0 * max_h + 0.1);
      // exhaustive search for the minimizer, then check cliqueness
      double best = 1e100;
      std::size_t best_x = 0;
      for (std::size_t x = 0; x < (1u << 12); ++x) {
        std::vector<std::uint8_t> bits(12);
        for (std::size_t i = 0; i < 12; ++i) bits[i] = (x >> i) & 1u;
        const double energy = classical_energy(problem, bits);
        if (energy < best) {
          best = energy;
          best_x = x;
        }
      }
      for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = i + 1; j < 12; ++j)
          if (((best_x >> i) & 1u) && ((best_x >> j) & 1u))
            CHECK(graph.edge(i, j));
    }
  }
  SUBCASE("negative inputs are rejected") {
    CliqueGraph graph;
    graph.n = 2;
    graph.weights = {1.0, -0.1};
    graph.adjacency.assign(4, 0);
    CHECK_THROWS_AS(build_clique_problem(graph, 1.0), std::invalid_argument);
    graph.weights = {1.0, 1.0};
    CHECK_THROWS_AS(build_clique_problem(graph, -1.0), std::invalid_argument);
  }
}

TEST_CASE("random partitions are balanced covers") {
  const Partition even = random_partition(8, 4, 5);
  for (const auto& group : even.groups) CHECK(group.size() == 2);

  const Partition uneven = random_partition(10, 4, 5);
  std::multiset<std::size_t> sizes;
  for (const auto& group : uneven.groups) sizes.insert(group.size());
  CHECK(sizes == std::multiset<std::size_t>{2, 2, 3, 3});

  const Partition single = random_partition(10, 1, 5);
  CHECK(single.groups[0].size() == 10);

  CHECK_THROWS_AS(random_partition(4, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_partition(4, 5, 1), std::invalid_argument);

  // determinism + cover property across many draws
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Partition a = random_partition(13, 3, seed);
    const Partition b = random_partition(13, 3, seed);
    CHECK(a.groups == b.groups);
    std::set<std::size_t> seen;
    for (const auto& group : a.groups)
      for (std::size_t index : group) CHECK(seen.insert(index).second);
    CHECK(seen.size() == 13);
  }
}

TEST_CASE("graph files round-trip") {
  CliqueGraph triangle;
  triangle.n = 3;
  triangle.weights = {1.0, 2.0, 3.0};
  triangle.adjacency.assign(9, 0);
  triangle.set_edge(0, 1);
  triangle.set_edge(1, 2);
  triangle.set_edge(0, 2);

  const fs::path path = temp_file("scqaoa_test_graph.json");
  save_graph(triangle, path.string());
  const CliqueGraph loaded = load_graph(path.string());
  CHECK(loaded.n == 3);
  CHECK(loaded.weights == triangle.weights);
  CHECK(loaded.adjacency == triangle.adjacency);
  fs::remove(path);
}

TEST_CASE("problem files round-trip exactly") {
  IsingProblem problem = IsingProblem::zeros(4, Basis::Occupation);
  problem.h = {0.1, -0.25, 1.0 / 3.0, 0.0};
  problem.set_coupling(0, 2, 0.7231234567890123);
  problem.set_coupling(1, 3, -1e-9);

  const fs::path path = temp_file("scqaoa_test_problem.json");
  save_problem(problem, path.string());
  const IsingProblem loaded = load_problem(path.string());
  CHECK(loaded.n == problem.n);
  CHECK(loaded.basis == problem.basis);
  CHECK(loaded.h == problem.h);  // bit-exact through the JSON round trip
  CHECK(loaded.w == problem.w);
  fs::remove(path);
}

TEST_CASE("regenerating an instance reproduces byte-identical files") {
  const IsingProblem problem = break_z2_symmetry(generate_sk(16, 77)).problem;
  const fs::path a = temp_file("scqaoa_gen_a.json");
  const fs::path b = temp_file("scqaoa_gen_b.json");
  save_problem(problem, a.string());
  save_problem(break_z2_symmetry(generate_sk(16, 77)).problem, b.string());
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  const std::string sa((std::istreambuf_iterator<char>(fa)),
                       std::istreambuf_iterator<char>());
  const std::string sb((std::istreambuf_iterator<char>(fb)),
                       std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  CHECK(!sa.empty());
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("malformed files are rejected with diagnostics") {
  const fs::path path = temp_file("scqaoa_test_bad.json");

  SUBCASE("unparseable text") {
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_WITH_AS(load_graph(path.string()),
                         doctest::Contains("parse failure"), std::runtime_error);
  }
  SUBCASE("self loops") {
    std::ofstream(path) << R"({"n":2,"weights":[1,1],"edges":[[0,0]]})";
    CHECK_THROWS_AS(load_graph(path.string()), std::runtime_error);
  }
  SUBCASE("negative weights") {
    std::ofstream(path) << R"({"n":2,"weights":[1,-1],"edges":[]})";
    CHECK_THROWS_AS(load_graph(path.string()), std::invalid_argument);
  }
  SUBCASE("edge out of range") {
    std::ofstream(path) << R"({"n":2,"weights":[1,1],"edges":[[0,2]]})";
    CHECK_THROWS_AS(load_graph(path.string()), std::runtime_error);
  }
  SUBCASE("empty edge list loads as all-false adjacency") {
    std::ofstream(path) << R"({"n":3,"weights":[1,1,1],"edges":[]})";
    const CliqueGraph empty = load_graph(path.string());
    for (auto bit : empty.adjacency) CHECK(bit == 0);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_graph("/nonexistent/scqaoa.json"), std::runtime_error);
  }
  fs::remove(path);
}

TEST_CASE("asymmetric adjacency fails validation") {
  CliqueGraph graph;
  graph.n = 2;
  graph.weights = {1.0, 1.0};
  graph.adjacency = {0, 1, 0, 0};
  CHECK_THROWS_AS(validate_graph(graph), std::invalid_argument);
}

TEST_CASE("random clique graphs are valid and deterministic") {
  const CliqueGraph a = random_clique_graph(10, 0.4, 5);
  const CliqueGraph b = random_clique_graph(10, 0.4, 5);
  CHECK(a.adjacency == b.adjacency);
  CHECK(a.weights == b.weights);
  CHECK_NOTHROW(validate_graph(a));
  for (double w : a.weights) {
    CHECK(w >= 0.2);
    CHECK(w <= 1.0);
  }
}
