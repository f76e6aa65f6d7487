#pragma once

// The acceptance suite: eleven exact checks, each comparing the library
// against an independent computation. Shared by the test binary and the CLI.

#include <cstdint>
#include <string>
#include <vector>

namespace diagcx {

struct VerifyOptions {
  std::uint64_t seed = 20260601;
  int depth = 12;  // profile truncation depth for criteria 6 and 7
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // first failure, or a short summary
  double seconds = 0;
};

inline constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, const VerifyOptions& opt = {});
std::vector<CriterionResult> verify_all(const VerifyOptions& opt = {});
/// One line per criterion: "PASS  3  name  (0.12 s)  detail".
std::string format_result(const CriterionResult& r);

}  // namespace diagcx
