#include "scqaoa/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace scqaoa {

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& fn,
    std::vector<double> x0, const std::vector<double>& steps,
    const NelderMeadOptions& options) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw std::invalid_argument("nelder_mead: empty start point");
  if (steps.size() != dim)
    throw std::invalid_argument("nelder_mead: steps length mismatch");
  if (options.max_evals < dim + 1)
    throw std::invalid_argument("nelder_mead: max_evals below simplex size");

  NelderMeadResult result;
  auto evaluate = [&](const std::vector<double>& x) {
    const double value = fn(x);
    ++result.evals;
    if (result.history.empty() || value < result.history.back())
      result.history.push_back(value);
    else
      result.history.push_back(result.history.back());
    return value;
  };

  std::vector<std::vector<double>> simplex(dim + 1, x0);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += steps[i];
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = evaluate(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), reflected(dim), probe(dim);

  while (result.evals < options.max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    double spread_f = std::fabs(values[worst] - values[best]);
    double spread_x = 0.0;
    for (std::size_t i = 0; i <= dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        spread_x = std::max(spread_x,
                            std::fabs(simplex[i][j] - simplex[best][j]));
    if (spread_f <= options.tol_f && spread_x <= options.tol_x) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j];
    }
    for (double& value : centroid) value /= static_cast<double>(dim);

    for (std::size_t j = 0; j < dim; ++j)
      reflected[j] = centroid[j] + options.alpha * (centroid[j] - simplex[worst][j]);
    const double f_reflected = evaluate(reflected);

    if (f_reflected < values[best]) {
      for (std::size_t j = 0; j < dim; ++j)
        probe[j] = centroid[j] + options.gamma * (reflected[j] - centroid[j]);
      const double f_expanded = evaluate(probe);
      if (f_expanded < f_reflected) {
        simplex[worst] = probe;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }

    if (f_reflected < values[worst]) {  // outside contraction
      for (std::size_t j = 0; j < dim; ++j)
        probe[j] = centroid[j] + options.rho * (reflected[j] - centroid[j]);
    } else {  // inside contraction
      for (std::size_t j = 0; j < dim; ++j)
        probe[j] = centroid[j] + options.rho * (simplex[worst][j] - centroid[j]);
    }
    const double f_contracted = evaluate(probe);
    if (f_contracted < std::min(values[worst], f_reflected)) {
      simplex[worst] = probe;
      values[worst] = f_contracted;
      continue;
    }

    for (std::size_t i = 0; i <= dim; ++i) {  // shrink toward best
      if (i == best) continue;
      for (std::size_t j = 0; j < dim; ++j)
        simplex[i][j] =
            simplex[best][j] + options.sigma * (simplex[i][j] - simplex[best][j]);
      values[i] = evaluate(simplex[i]);
      if (result.evals >= options.max_evals) break;
    }
  }

  const std::size_t best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  result.exhausted = result.evals >= options.max_evals;
  return result;
}

}  // namespace scqaoa
