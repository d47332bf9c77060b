#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>

#include "flasque/suite/properties.hpp"

// Runs every acceptance criterion and prints one PASS/FAIL line each.
// An optional argument selects criteria by number, e.g. "acceptance 3 5".
int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::stoi(argv[i]));
  int failed = 0;
  double total = 0;
  for (const auto& a : flasque::acceptance_criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), a.id) == only.end()) continue;
    flasque::AcceptanceResult r = flasque::run_acceptance(a);
    total += r.seconds;
    char timing[64];
    if (r.limit_seconds > 0) {
      std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", r.seconds, r.limit_seconds);
    } else {
      std::snprintf(timing, sizeof timing, "%.2f s", r.seconds);
    }
    std::cout << "AC" << r.id << " " << (r.passed ? "PASS" : "FAIL") << "  " << r.title << " (" << timing << ")\n";
    if (!r.detail.empty()) std::cout << "      " << r.detail << "\n";
    std::cout.flush();
    failed += !r.passed;
  }
  std::printf("%d failed, total %.1f s\n", failed, total);
  return failed == 0 ? 0 : 1;
}
