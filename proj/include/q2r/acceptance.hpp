#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace q2r {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;
  unsigned jobs = 1;
};

inline constexpr int kCriterionCount = 10;

/// Runs criterion `id` (1..10). Exceptions are reported as failures.
CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS  3 fixed-point census (...)"
std::string format_result(const CriterionResult& r);

}  // namespace q2r
