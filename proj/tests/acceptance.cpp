#include "dyncomp/acceptance.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char **argv)
{
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    only.push_back(std::atoi(argv[i]));
  }
  int failed = 0;
  for (const auto &r : dyncomp::run_acceptance(only)) {
    std::cout << dyncomp::format_line(r) << std::endl;
    failed += r.passed ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
