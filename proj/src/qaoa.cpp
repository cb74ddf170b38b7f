#include "scqaoa/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scqaoa/rng.hpp"

namespace scqaoa {

SubproblemSpec make_subproblem(const IsingProblem& problem,
                               const Partition& partition,
                               const Environment& env, std::size_t k) {
  SubproblemSpec spec;
  spec.indices = partition.groups[k];
  spec.basis = problem.basis;
  spec.local_h = effective_fields(problem, partition, env, k);
  const std::size_t m = spec.indices.size();
  spec.local_w.assign(m * m, 0.0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const double w = problem.w[spec.indices[a] * problem.n + spec.indices[b]];
      spec.local_w[a * m + b] = spec.local_w[b * m + a] = w;
    }
  return spec;
}

std::size_t SubproblemState::qubits() const {
  std::size_t m = 0;
  while ((std::size_t(1) << m) < amplitudes.size()) ++m;
  return m;
}

double SubproblemState::norm_error() const {
  double total = 0.0;
  for (const auto& a : amplitudes) total += std::norm(a);
  return std::fabs(total - 1.0);
}

namespace {

inline double bit_value(Basis basis, unsigned bit) {
  return basis == Basis::Spin ? 1.0 - 2.0 * bit : static_cast<double>(bit);
}

// Diagonal of the local cost operator over all 2^m basis states, built
// incrementally: state x differs from x with its lowest set bit cleared by
// one variable flip, an O(m) energy delta.
std::vector<double> cost_diagonal(const SubproblemSpec& spec) {
  const std::size_t m = spec.size();
  const std::size_t dim = std::size_t(1) << m;
  std::vector<double> diag(dim, 0.0);

  double e0 = 0.0;  // all bits zero
  if (spec.basis == Basis::Spin) {
    for (std::size_t a = 0; a < m; ++a) {
      e0 += spec.local_h[a];
      for (std::size_t b = a + 1; b < m; ++b) e0 += spec.coupling(a, b);
    }
  }
  diag[0] = e0;

  for (std::size_t x = 1; x < dim; ++x) {
    const std::size_t prev = x & (x - 1);  // lowest set bit cleared
    std::size_t b = 0;
    while (((x >> b) & 1u) == 0) ++b;
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == b) continue;
      row += spec.coupling(b, j) * bit_value(spec.basis, (prev >> j) & 1u);
    }
    const double delta = spec.basis == Basis::Spin
                             ? -2.0 * (spec.local_h[b] + row)
                             : spec.local_h[b] + row;
    diag[x] = diag[prev] + delta;
  }
  return diag;
}

void apply_phase(std::vector<std::complex<double>>& amp,
                 const std::vector<double>& diag, double gamma) {
  for (std::size_t x = 0; x < amp.size(); ++x) {
    const double angle = -gamma * diag[x];
    amp[x] *= std::complex<double>(std::cos(angle), std::sin(angle));
  }
}

void apply_mixer(std::vector<std::complex<double>>& amp, std::size_t m,
                 double beta) {
  const double c = std::cos(beta);
  const std::complex<double> is(0.0, std::sin(beta));
  for (std::size_t q = 0; q < m; ++q) {
    const std::size_t bit = std::size_t(1) << q;
    for (std::size_t x = 0; x < amp.size(); ++x) {
      if (x & bit) continue;
      const std::complex<double> a0 = amp[x];
      const std::complex<double> a1 = amp[x | bit];
      amp[x] = c * a0 + is * a1;
      amp[x | bit] = is * a0 + c * a1;
    }
  }
}

}  // namespace

SubproblemState run_qaoa(const SubproblemSpec& spec, const QaoaParams& params,
                         std::size_t qubit_cap) {
  validate_params(params);
  const std::size_t m = spec.size();
  if (m == 0) throw std::invalid_argument("run_qaoa: empty subproblem");
  if (m > qubit_cap)
    throw std::length_error("run_qaoa: subproblem of " + std::to_string(m) +
                            " qubits exceeds cap " + std::to_string(qubit_cap));

  const std::size_t dim = std::size_t(1) << m;
  SubproblemState state;
  state.amplitudes.assign(dim, std::complex<double>(
                                   1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  const std::vector<double> diag = cost_diagonal(spec);
  for (std::size_t layer = 0; layer < params.p(); ++layer) {
    apply_phase(state.amplitudes, diag, params.gammas[layer]);
    apply_mixer(state.amplitudes, m, params.betas[layer]);
  }
  return state;
}

ExpectationSet expectations(const SubproblemState& state,
                            const SubproblemSpec& spec) {
  const std::size_t m = spec.size();
  const std::size_t dim = std::size_t(1) << m;
  if (state.amplitudes.size() != dim)
    throw std::invalid_argument("expectations: state size does not match spec");
  if (state.norm_error() > 1e-9)
    throw std::invalid_argument("expectations: state is not normalized");

  ExpectationSet set;
  set.one_body.assign(m, 0.0);
  set.two_body.assign(m * m, 0.0);
  std::vector<double> values(m);
  for (std::size_t x = 0; x < dim; ++x) {
    const double p = std::norm(state.amplitudes[x]);
    if (p == 0.0) continue;
    for (std::size_t a = 0; a < m; ++a)
      values[a] = bit_value(spec.basis, (x >> a) & 1u);
    for (std::size_t a = 0; a < m; ++a) {
      const double pa = p * values[a];
      if (pa == 0.0) continue;
      set.one_body[a] += pa;
      for (std::size_t b = a + 1; b < m; ++b)
        set.two_body[a * m + b] += pa * values[b];
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    set.two_body[a * m + a] =
        spec.basis == Basis::Spin ? 1.0 : set.one_body[a];
    for (std::size_t b = a + 1; b < m; ++b)
      set.two_body[b * m + a] = set.two_body[a * m + b];
  }
  return set;
}

std::vector<std::vector<std::uint8_t>> sample(const SubproblemState& state,
                                              std::size_t shots,
                                              std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sample: need shots >= 1");
  const std::size_t dim = state.amplitudes.size();
  const std::size_t m = state.qubits();
  std::vector<double> cumulative(dim);
  double running = 0.0;
  for (std::size_t x = 0; x < dim; ++x) {
    running += std::norm(state.amplitudes[x]);
    cumulative[x] = running;
  }
  cumulative[dim - 1] = 1.0;

  Rng rng(seed);
  std::vector<std::vector<std::uint8_t>> out(shots);
  for (auto& bits : out) {
    const double u = rng.uniform01();
    const std::size_t x = static_cast<std::size_t>(
        std::lower_bound(cumulative.begin(), cumulative.end(), u) -
        cumulative.begin());
    bits.resize(m);
    for (std::size_t a = 0; a < m; ++a) bits[a] = (x >> a) & 1u;
  }
  return out;
}

std::vector<double> analytic_one_body_p1(const SubproblemSpec& spec,
                                         double gamma, double beta) {
  if (spec.basis != Basis::Spin)
    throw std::invalid_argument(
        "analytic_one_body_p1: spin basis required (convert first)");
  const std::size_t m = spec.size();
  std::vector<double> out(m);
  const double s2b = std::sin(2.0 * beta);
  for (std::size_t a = 0; a < m; ++a) {
    double prod = 1.0;
    for (std::size_t j = 0; j < m; ++j)
      if (j != a) prod *= std::cos(2.0 * gamma * spec.coupling(a, j));
    out[a] = -s2b * std::sin(2.0 * gamma * spec.local_h[a]) * prod;
  }
  return out;
}

std::vector<double> analytic_two_body_p1(const SubproblemSpec& spec,
                                         double gamma, double beta) {
  if (spec.basis != Basis::Spin)
    throw std::invalid_argument(
        "analytic_two_body_p1: spin basis required (convert first)");
  const std::size_t m = spec.size();
  std::vector<double> out(m * m, 0.0);
  const double s2b = std::sin(2.0 * beta);
  const double s4b = std::sin(4.0 * beta);

  // trig tables keep the pair loop free of transcendental calls;
  // cos(x -+ y) expands through them below
  std::vector<double> cos_w(m * m), sin_w(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t j = 0; j < m; ++j) {
      cos_w[a * m + j] = std::cos(2.0 * gamma * spec.local_w[a * m + j]);
      sin_w[a * m + j] = std::sin(2.0 * gamma * spec.local_w[a * m + j]);
    }

  for (std::size_t a = 0; a < m; ++a) {
    out[a * m + a] = 1.0;
    for (std::size_t b = a + 1; b < m; ++b) {
      double prod_a = 1.0, prod_b = 1.0, prod_minus = 1.0, prod_plus = 1.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == a || j == b) continue;
        const double ca = cos_w[a * m + j];
        const double cb = cos_w[b * m + j];
        const double sa = sin_w[a * m + j];
        const double sb = sin_w[b * m + j];
        prod_a *= ca;
        prod_b *= cb;
        prod_minus *= ca * cb + sa * sb;
        prod_plus *= ca * cb - sa * sb;
      }
      const double ha = spec.local_h[a];
      const double hb = spec.local_h[b];
      const double value =
          -0.5 * s4b * sin_w[a * m + b] *
              (std::cos(2.0 * gamma * ha) * prod_a +
               std::cos(2.0 * gamma * hb) * prod_b) +
          0.5 * s2b * s2b *
              (std::cos(2.0 * gamma * (ha - hb)) * prod_minus -
               std::cos(2.0 * gamma * (ha + hb)) * prod_plus);
      out[a * m + b] = out[b * m + a] = value;
    }
  }
  return out;
}

std::pair<SubproblemSpec, double> spec_spin_from_occupation(
    const SubproblemSpec& spec) {
  if (spec.basis != Basis::Occupation)
    throw std::invalid_argument(
        "spec_spin_from_occupation: spec is not occupation-basis");
  const std::size_t m = spec.size();
  SubproblemSpec spin = spec;
  spin.basis = Basis::Spin;
  double offset = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) row += spec.local_w[a * m + j];
    spin.local_h[a] = -0.5 * spec.local_h[a] - 0.25 * row;
    offset += 0.5 * spec.local_h[a];
    for (std::size_t b = a + 1; b < m; ++b) {
      spin.local_w[a * m + b] = spin.local_w[b * m + a] =
          0.25 * spec.local_w[a * m + b];
      offset += 0.25 * spec.local_w[a * m + b];
    }
  }
  return {std::move(spin), offset};
}

ExpectationSet analytic_expectations_p1(const SubproblemSpec& spec,
                                        double gamma, double beta) {
  const std::size_t m = spec.size();
  ExpectationSet set;
  if (spec.basis == Basis::Spin) {
    set.one_body = analytic_one_body_p1(spec, gamma, beta);
    set.two_body = analytic_two_body_p1(spec, gamma, beta);
    return set;
  }
  const auto [spin_spec, offset] = spec_spin_from_occupation(spec);
  (void)offset;  // global phase only
  const std::vector<double> z1 = analytic_one_body_p1(spin_spec, gamma, beta);
  const std::vector<double> z2 = analytic_two_body_p1(spin_spec, gamma, beta);
  set.one_body.resize(m);
  set.two_body.assign(m * m, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    set.one_body[a] = 0.5 * (1.0 - z1[a]);
    set.two_body[a * m + a] = set.one_body[a];
    for (std::size_t b = a + 1; b < m; ++b) {
      const double value = 0.25 * (1.0 - z1[a] - z1[b] + z2[a * m + b]);
      set.two_body[a * m + b] = set.two_body[b * m + a] = value;
    }
  }
  return set;
}

}  // namespace scqaoa
