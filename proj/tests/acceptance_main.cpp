// Release gate: runs every criterion and prints one pass/fail line each.
// Exits nonzero if any criterion fails.
#include <cstring>
#include <iostream>
#include <string>

#include "scqaoa/acceptance.hpp"

int main(int argc, char** argv) {
  std::string only;
  std::size_t jobs = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = argv[++i];
    if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc)
      jobs = static_cast<std::size_t>(std::stoul(argv[++i]));
  }

  const auto results = scqaoa::run_acceptance(only, jobs, std::cout);
  std::size_t failed = 0;
  for (const auto& result : results)
    if (!result.pass) ++failed;
  std::cout << results.size() - failed << "/" << results.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
