#pragma once

// Seeded property suites shared by the command line driver and the tests.
// Every case draws its inputs from its own generator, seeded from
// (suite, seed, case index), so any single case can be replayed in isolation.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace treelab {

struct SuiteParams {
  int q = 3;
  int depth = 4;
  std::size_t cases = 100;
  std::uint64_t seed = 0;
};

struct CaseOutcome {
  std::size_t index = 0;
  std::uint64_t case_seed = 0;
  bool passed = true;
  std::string inputs;  ///< serialized inputs sufficient to rebuild the case
  std::string detail;  ///< what failed, empty on success
  std::string label;   ///< optional classification counted by the suite
};

struct SuiteResult {
  std::string suite;
  SuiteParams params;
  std::size_t failures = 0;
  std::map<std::string, std::size_t> counters;
  std::vector<CaseOutcome> failed;
};

/// Names of all registered suites.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Deterministic per-case seed.
std::uint64_t case_seed(const std::string& suite, std::uint64_t seed, std::size_t index);

/// Runs one case; throws InvalidInput for an unknown suite.
CaseOutcome run_case(const std::string& suite, const SuiteParams& params, std::size_t index);

/// Runs cases [0, params.cases), sharded over `jobs` threads; the result does
/// not depend on the number of jobs.
SuiteResult run_suite(const std::string& suite, const SuiteParams& params, unsigned jobs = 1);

} // namespace treelab
