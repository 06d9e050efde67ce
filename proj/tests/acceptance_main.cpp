// Exit-gate checks; prints one PASS/FAIL line per criterion.

#include "fmgsr/acceptance.hpp"

#include <filesystem>
#include <iostream>

int main(int argc, char** argv) {
  fmgsr::AcceptanceOptions options;
  if (argc > 1) options.output_dir = std::filesystem::path(argv[1]);
  const auto results = fmgsr::run_acceptance(options);
  fmgsr::print_acceptance(std::cout, results);
  const bool ok = fmgsr::all_passed(results);
  std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << '\n';
  return ok ? 0 : 1;
}
