#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace wavebound {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;      // key figure(s) behind the verdict
  double seconds = 0;
  double time_limit = 0;   // seconds; exceeding it fails the criterion
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  int threads = 0;   // 0: WAVEBOUND_THREADS, else hardware concurrency
  int grid_n = 512;  // resolution for the grid criterion
};

constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});

/// Runs every criterion in order; `on_result` (if set) sees each as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace wavebound
