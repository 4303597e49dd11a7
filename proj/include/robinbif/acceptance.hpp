#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace robinbif {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  nlohmann::ordered_json data;
};

struct AcceptanceOptions {
  /// 0: every criterion runs at its own pinned resolution. Otherwise the
  /// grid-dependent criteria run at this N (coarse level N/2).
  int grid = 0;
  /// Criteria to run (1..10); empty runs all.
  std::vector<int> only;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  bool all_pass() const;
};

/// Runs the acceptance criteria for f = lambda (u^2 + u^3) and the linear
/// homotopy. `on_result` is called after each criterion.
AcceptanceReport run_acceptance(const AcceptanceOptions& opts = {},
                                const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS [ 3] operator structure: ..." style line.
std::string format_line(const CriterionResult& r);

nlohmann::ordered_json to_json(const AcceptanceReport& r);

}  // namespace robinbif
