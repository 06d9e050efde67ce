#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace fmgsr {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct AcceptanceOptions {
  std::filesystem::path output_dir = std::filesystem::temp_directory_path() / "fmgsr_acceptance";
  std::uint64_t seed = 20240601;
};

/// Runs the exit checks (tau exactness, Kaczmarz constraint, patch-order
/// invariance, discretization baseline, one-FMG accuracy, two-halo
/// degradation, memory model, figure structure). Each check includes its
/// runtime budget.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// One "[PASS]/[FAIL] #id title -- detail (t s)" line per criterion.
void print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace fmgsr
