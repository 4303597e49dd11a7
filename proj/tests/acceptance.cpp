// One line per acceptance criterion; nonzero exit when any criterion fails.
#include <cstdio>

#include "robinbif/acceptance.hpp"

int main() {
  const auto report = robinbif::run_acceptance({}, [](const robinbif::CriterionResult& r) {
    std::printf("%s\n", robinbif::format_line(r).c_str());
    std::fflush(stdout);
  });
  int failed = 0;
  for (const auto& c : report.criteria) failed += c.pass ? 0 : 1;
  std::printf("%d/%zu criteria pass\n", static_cast<int>(report.criteria.size()) - failed, report.criteria.size());
  return failed == 0 ? 0 : 1;
}
