// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails or overruns its time budget.

#include <cstdio>
#include <cstdlib>

#include "fractopo/selftest.hpp"

int main() {
  std::uint64_t seed = fractopo::selftest::kDefaultSeed;
  if (const char* env = std::getenv("FRACTOPO_SEED")) {
    seed = std::strtoull(env, nullptr, 10);
  }
  const auto results = fractopo::selftest::run_acceptance(seed);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%s] %-26s %s (%.3fs < %.0fs)\n", r.ok() ? "PASS" : "FAIL",
                r.name.c_str(), r.detail.c_str(), r.elapsed_s, r.budget_s);
    if (!r.ok()) ++failures;
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(results.size()) - failures, results.size());
  return failures == 0 ? 0 : 1;
}
