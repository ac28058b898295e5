#pragma once

// Property suites over random instances and user fixtures. Each check reports
// the number of cases inspected and the worst violation found.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mixconc/spec_io.hpp"

namespace mixconc::verification {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  /// Largest amount by which an inequality or identity was missed (0 when exact).
  double worst = 0.0;
  std::string detail;
};

struct NamedSpec {
  std::string name;
  ProcessSpec spec;
};

struct Options {
  std::uint64_t seed = 20240521;
  /// Multiplies the number of random cases per check.
  double scale = 1.0;
  std::uint64_t cell_budget = kDefaultCellBudget;
  std::vector<NamedSpec> fixtures;
};

std::vector<std::string_view> suite_names();

/// name is one of suite_names() or "all".
std::vector<CheckResult> run_suite(std::string_view name, const Options& options);

}  // namespace mixconc::verification
