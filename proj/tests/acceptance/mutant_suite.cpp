// Exhaustive suite run against a weakened definition. Exit 1 means the suite
// caught the weakening, 0 means it did not.
#include <iostream>

#include "locwheel/certify.hpp"

int main() {
  using namespace locwheel;
  std::vector<Radius> radii;
  for (Length r = 3; r <= 10; ++r) radii.push_back(Radius(r));
  radii.push_back(Radius::infinite());
  SuiteResult res = dichotomy_suite(7, radii, suite_threads());
  std::cout << res.rows.size() << " instances, " << res.report.violations.size() << " violations\n";
  if (!res.report.violations.empty()) {
    const auto& v = res.report.violations.front();
    std::cout << "first: " << v.invariant << " @ " << v.location << ": " << v.detail << "\n";
  }
  return res.report.pass() ? 0 : 1;
}
