#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace scqaoa {

enum class Basis { Spin, Occupation };

std::string basis_name(Basis basis);
Basis basis_from_name(const std::string& name);

// Classical cost function
//   C(v) = sum_i v_i * (h_i + sum_{j>i} w_ij v_j),
// where v_i = 1 - 2*b_i in the Spin basis and v_i = b_i in the Occupation
// basis. The coupling matrix is dense, symmetric, zero on the diagonal.
struct IsingProblem {
  std::size_t n = 0;
  Basis basis = Basis::Spin;
  std::vector<double> h;  // length n
  std::vector<double> w;  // n*n row-major

  double coupling(std::size_t i, std::size_t j) const { return w[i * n + j]; }
  void set_coupling(std::size_t i, std::size_t j, double value) {
    w[i * n + j] = value;
    w[j * n + i] = value;
  }

  static IsingProblem zeros(std::size_t n, Basis basis);
};

// Throws std::invalid_argument if sizes, symmetry, or the zero diagonal are
// violated.
void validate_problem(const IsingProblem& problem);

// Disjoint cover of {0..n-1} into groups of size floor(n/k) or ceil(n/k).
struct Partition {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> group_of;  // variable index -> group index

  std::size_t k() const { return groups.size(); }
  std::size_t n() const { return group_of.size(); }
};

Partition make_partition(std::vector<std::vector<std::size_t>> groups,
                         std::size_t n);

// Mean-field record of cross-subproblem expectations, one entry per variable.
// Spin entries live in [-1, 1], Occupation entries in [0, 1].
struct Environment {
  Basis basis = Basis::Spin;
  std::vector<double> e;
};

void validate_environment(const Environment& env, std::size_t n);

struct QaoaParams {
  std::vector<double> gammas;
  std::vector<double> betas;

  std::size_t p() const { return gammas.size(); }
};

void validate_params(const QaoaParams& params);

// One- and two-body diagonal expectations over a subproblem, in the
// subproblem's basis. two_body is m*m row-major and symmetric; its diagonal
// is 1 in the Spin basis and equals one_body in the Occupation basis.
struct ExpectationSet {
  std::vector<double> one_body;
  std::vector<double> two_body;

  std::size_t size() const { return one_body.size(); }
  double pair(std::size_t a, std::size_t b) const {
    return two_body[a * one_body.size() + b];
  }
};

double classical_energy(const IsingProblem& problem,
                        const std::vector<std::uint8_t>& assignment);

// Dressed linear coefficients for subproblem k:
//   h~_i = h_i + sum_{j not in S_k} w_ij * e_j.
std::vector<double> effective_fields(const IsingProblem& problem,
                                     const Partition& partition,
                                     const Environment& env, std::size_t k);

// Energy of the factorized product state under the mean-field split:
// fields and intra-group pairs use exact expectations, cross-group pairs use
// the product of one-body expectations.
double factorized_energy(const IsingProblem& problem,
                         const Partition& partition,
                         const std::vector<ExpectationSet>& expectations);

// Share of the factorized energy carried by field and intra-group terms.
// Fields count as intra. Throws std::domain_error when the total magnitude
// is below `tolerance`.
double intra_energy_fraction(const IsingProblem& problem,
                             const Partition& partition,
                             const std::vector<ExpectationSet>& expectations,
                             double tolerance = 1e-12);

// Basis conversions track the constant energy shift:
//   E_occupation(x) = E_spin(z(x)) + offset  (and vice versa).
std::pair<IsingProblem, double> spin_from_occupation(const IsingProblem& problem);
std::pair<IsingProblem, double> occupation_from_spin(const IsingProblem& problem);

}  // namespace scqaoa
