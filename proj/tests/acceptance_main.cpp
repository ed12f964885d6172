// Acceptance gate: runs the full criterion battery, prints one line per
// criterion, and exits nonzero when any asserted criterion fails.
#include <cstdlib>
#include <iostream>

#include "fgstates/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 42;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  const auto results = fgstates::run_acceptance_suite(seed);
  const int failures = fgstates::print_acceptance_human(results, std::cout);
  return failures == 0 ? 0 : 1;
}
