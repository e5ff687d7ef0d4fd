#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geomq/observables.hpp"

namespace geomq {

struct VerifyOptions {
  std::uint64_t seed = 12345;
  double rank_tolerance = kRankTol;
  BracketConvention convention = BracketConvention::internal;
};

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  // "at most" checks pass when residual <= tolerance; negative controls are
  // "at least" checks and pass when residual exceeds the threshold.
  bool require_at_least = false;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  int failures() const;
};

/// Runs one named invariant suite (algebra | geometry | dynamics |
/// composition) over built-in and seeded randomized fixtures.
SuiteReport run_suite(const std::string& name, const VerifyOptions& opts);

std::vector<SuiteReport> run_all_suites(const VerifyOptions& opts);

/// Validates states/observables from a fixture file against their type
/// invariants; every violation becomes a named failing check.
SuiteReport validate_fixture_file(const std::string& path,
                                  const VerifyOptions& opts);

const std::vector<std::string>& suite_names();

}  // namespace geomq
