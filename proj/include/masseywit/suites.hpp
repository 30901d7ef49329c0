#pragma once

#include <string>
#include <vector>

#include "masseywit/witness.hpp"

namespace masseywit {

struct SuiteOptions {
  unsigned jobs = 1;
  u64 seed = 20250809;                     // base seed for the randomized suites
  u64 search_budget = kDefaultSearchBudget;
};

/// A suite's outcome: overall verdict plus a machine-readable report, one
/// JSON object per line ({"check":..,"status":..,"detail":..}). Reports are
/// byte-deterministic for fixed options and independent of the job count.
struct SuiteResult {
  bool pass = false;
  std::string report;
};

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);

u64 fnv1a64(const std::string& bytes);

}  // namespace masseywit
