#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace moment_atlas::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Identifiers of every acceptance criterion, in order.
std::vector<int> criterion_ids();

/// Runs one criterion; exceptions are caught and reported as failures.
CriterionResult run_criterion(int id);

/// Prints one PASS/FAIL line per criterion (or only `only`) and returns the
/// number of failures.
int run_all(std::ostream& out, std::optional<int> only = std::nullopt);

}  // namespace moment_atlas::acceptance
