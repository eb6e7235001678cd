#pragma once

#include <string>
#include <vector>

#include "sinqpe/analysis.hpp"

namespace sinqpe {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;  // worst observed deviation
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  int max_qubits = 8;     // largest register the suite exercises (1..12)
  double tamper_mu = 0.0; // fault-injection hook: added to mu0_plus inside
                          // the recursion_step check only
};

// Deterministic identity suite covering the state algebra, the preparation
// gates and the measurement backends. Every check reports its worst observed
// deviation against a fixed tolerance.
std::vector<CheckResult> run_invariant_suite(const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace sinqpe
