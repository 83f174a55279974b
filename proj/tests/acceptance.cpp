// Acceptance suite: runs every pinned self-verification check and prints one
// pass/fail line per criterion.

#include <cstdio>

#include "belltime/repro.hpp"

int main() {
  const std::vector<belltime::ReproCheck> checks = belltime::run_repro_checks();
  int failures = 0;
  for (const belltime::ReproCheck& c : checks) {
    if (!c.passed) ++failures;
    std::printf("%s %s: %s\n      %s\n", c.passed ? "PASS" : "FAIL", c.id.c_str(),
                c.description.c_str(), c.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", checks.size() - failures, checks.size());
  return failures == 0 ? 0 : 1;
}
