#include <iostream>

#include "twistmap/acceptance.hpp"

int main() {
  const auto results = twistmap::run_acceptance();
  bool all = true;
  for (const auto& r : results) {
    std::cout << twistmap::format_result(r) << "\n";
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
