#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace scqaoa {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values
  double seconds = 0.0;
};

// Runs the release checks: quantitative scaled-down reproductions plus
// oracle-based equivalences, each with pinned tolerances. `only` filters by
// substring of the criterion name (empty runs everything); one line per
// criterion is streamed to `log` as it completes.
std::vector<CriterionResult> run_acceptance(const std::string& only,
                                            std::size_t jobs,
                                            std::ostream& log);

}  // namespace scqaoa
