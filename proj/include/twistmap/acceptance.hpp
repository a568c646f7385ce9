#pragma once

#include <functional>
#include <string>
#include <vector>

namespace twistmap {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  bool skipped = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Wall-clock budget in seconds; criteria starting after it is spent are skipped.
  double budget_seconds = 3600.0;
  /// Empty runs every criterion.
  std::vector<int> only;
  std::function<void(const std::string&)> log;
};

/// Runs criteria 1..11 in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// One "PASS <id> ..." or "FAIL <id> ..." line.
std::string format_result(const CriterionResult& r);

}  // namespace twistmap
