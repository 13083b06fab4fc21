#pragma once

#include <functional>
#include <string>
#include <vector>

namespace qpg::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  /// Failed sub-checks, or a short summary when everything passed.
  std::vector<std::string> notes;
  double seconds = 0.0;
};

struct Criterion {
  int id;
  std::string title;
  std::function<CriterionResult()> run;
};

/// The full battery, in order.
std::vector<Criterion> criteria();

/// Runs one criterion, converting escaped exceptions into a failure note.
CriterionResult run(const Criterion& c);

}  // namespace qpg::acceptance
