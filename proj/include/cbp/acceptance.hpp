#pragma once

// The acceptance battery: every quantitative claim the library is built to
// check, each with pinned parameters, tolerances and runtime limits.

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cbp/algorithms.hpp"

namespace cbp {

enum class CriterionStatus { pass, fail, skipped };

const char* to_string(CriterionStatus status);

struct CriterionResult {
  int id = 0;
  std::string title;
  CriterionStatus status = CriterionStatus::pass;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;  // 0: no runtime limit
};

struct SuiteOptions {
  // Tie-break used for BaP in the tightness criteria; the claimed traces
  // hold for min-index.
  TieBreak bap_tie_break = TieBreak::min_index;
  std::chrono::milliseconds oracle_budget{5'000};
  std::uint64_t seed = 20141015;
};

class AcceptanceSuite {
 public:
  static constexpr int kCriteria = 11;

  explicit AcceptanceSuite(SuiteOptions options = {});
  ~AcceptanceSuite();
  AcceptanceSuite(const AcceptanceSuite&) = delete;
  AcceptanceSuite& operator=(const AcceptanceSuite&) = delete;

  // Criterion 7 also audits every oracle solve performed by criteria that ran
  // before it in the same suite object.
  CriterionResult run(int id);
  std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result = {});

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::string format_result_line(const CriterionResult& result);

}  // namespace cbp
