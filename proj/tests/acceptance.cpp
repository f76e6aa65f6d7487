// One line per acceptance criterion; nonzero exit if any fails.

#include <cstdio>

#include "diagcx/verify.hpp"

int main() {
  int failed = 0;
  for (int id = 1; id <= diagcx::kCriterionCount; ++id) {
    diagcx::CriterionResult r = diagcx::run_criterion(id);
    std::printf("%s\n", diagcx::format_result(r).c_str());
    std::fflush(stdout);
    failed += !r.pass;
  }
  std::printf("%d of %d criteria passed\n", diagcx::kCriterionCount - failed, diagcx::kCriterionCount);
  return failed ? 1 : 0;
}
