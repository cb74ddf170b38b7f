#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "scqaoa/model.hpp"

namespace scqaoa {

inline constexpr std::size_t kDefaultQubitCap = 24;

// One subproblem cut out of the global problem: its global indices, the
// environment-dressed linear coefficients over those indices, and the
// intra-group couplings.
struct SubproblemSpec {
  std::vector<std::size_t> indices;
  std::vector<double> local_h;   // dressed, length m
  std::vector<double> local_w;   // m*m, symmetric, zero diagonal
  Basis basis = Basis::Spin;

  std::size_t size() const { return indices.size(); }
  double coupling(std::size_t a, std::size_t b) const {
    return local_w[a * indices.size() + b];
  }
};

SubproblemSpec make_subproblem(const IsingProblem& problem,
                               const Partition& partition,
                               const Environment& env, std::size_t k);

// QAOA state over one subproblem. Local qubit a is bit a of the basis-state
// index; bit 0 maps to value +1 (spin) or 0 (occupation).
struct SubproblemState {
  std::vector<std::complex<double>> amplitudes;

  std::size_t qubits() const;
  double norm_error() const;  // |sum |a|^2 - 1|
};

// Applies p alternating layers exp(+i beta_k Sum_j X_j) * exp(-i gamma_k C_n)
// to the uniform superposition. The diagonal cost phase uses the subproblem's
// literal basis; the sign convention reproduces
//   <Z_i> = -sin(2 beta) sin(2 gamma h~_i) prod_j cos(2 gamma w_ij)
// at p = 1. Throws std::length_error when the subproblem exceeds `qubit_cap`.
SubproblemState run_qaoa(const SubproblemSpec& spec, const QaoaParams& params,
                         std::size_t qubit_cap = kDefaultQubitCap);

// Exact diagonal one- and two-body expectations in the spec's basis.
ExpectationSet expectations(const SubproblemState& state,
                            const SubproblemSpec& spec);

// i.i.d. draws from |amplitude|^2; each sample is a local bit string.
std::vector<std::vector<std::uint8_t>> sample(const SubproblemState& state,
                                              std::size_t shots,
                                              std::uint64_t seed);

// Closed-form p=1 one-body expectations (spin basis):
//   <Z_i> = -sin(2 beta) sin(2 gamma h~_i) prod_{j != i} cos(2 gamma w_ij).
std::vector<double> analytic_one_body_p1(const SubproblemSpec& spec,
                                         double gamma, double beta);

// Closed-form p=1 two-body expectations (spin basis), m*m symmetric with
// unit diagonal.
std::vector<double> analytic_two_body_p1(const SubproblemSpec& spec,
                                         double gamma, double beta);

// Full p=1 expectation set in the spec's basis. Occupation specs are
// converted to spin internally and the results mapped back through
// n = (1 - Z)/2. Scales to large subproblems (no state vector).
ExpectationSet analytic_expectations_p1(const SubproblemSpec& spec,
                                        double gamma, double beta);

// Spin form of an occupation spec (couplings/4, shifted fields); the offset
// tracks the constant energy shift.
std::pair<SubproblemSpec, double> spec_spin_from_occupation(
    const SubproblemSpec& spec);

}  // namespace scqaoa
