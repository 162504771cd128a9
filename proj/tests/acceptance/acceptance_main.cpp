#include <iostream>

#include "semiflux/acceptance.hpp"

int main() {
  auto results = semiflux::acceptance::run_all();
  int failed = 0;
  for (const auto& r : results) {
    std::cout << semiflux::acceptance::format_line(r) << "\n";
    if (!r.pass) ++failed;
  }
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
