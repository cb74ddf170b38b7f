#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace scqaoa {

struct NelderMeadOptions {
  std::size_t max_evals = 200;
  double tol_x = 1e-4;  // simplex diameter
  double tol_f = 1e-7;  // value spread across the simplex
  // standard coefficients: reflection, expansion, contraction, shrink
  double alpha = 1.0;
  double gamma = 2.0;
  double rho = 0.5;
  double sigma = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evals = 0;
  bool exhausted = false;       // stopped on max_evals, not tolerance
  std::vector<double> history;  // best value after each evaluation
};

// Downhill simplex minimization. The initial simplex is x0 plus one vertex
// per dimension offset by steps[i]. Deterministic.
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& fn,
    std::vector<double> x0, const std::vector<double>& steps,
    const NelderMeadOptions& options = {});

}  // namespace scqaoa
