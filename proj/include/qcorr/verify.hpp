#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcorr/fano.hpp"

namespace qcorr {

/// Options for the self-verification suite.
struct VerifyOptions {
  int n_min = 2;
  int n_max = 6;
  int s_samples = 9;  // interior grid 1/(samples+1), ..., samples/(samples+1)
  int starts = 32;
  std::uint64_t seed = 42;
  double product_tol = 1e-6;    // |closed-form product distance - oracle|
  double classical_tol = 1e-5;  // |closed-form D2 - oracle|
  bool parallel = true;

  /// Applied to every constructed state before checking; fault-injection
  /// hook used by the test harness.  Leave empty for normal operation.
  std::function<void(FanoMatrix&)> mutate_state;
};

struct CheckResult {
  std::string name;
  int cases = 0;
  bool passed = true;
  std::string first_failure;  // empty when passed
};

struct VerifySummary {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Runs the full invariant suite: additivity audit, closed-form-vs-oracle
/// comparisons (product and classical), classical fixed points, density
/// validity, n=2 scheme agreement and the n=3 branch-point checks.
VerifySummary run_verification(const VerifyOptions& opt);

/// One row per check plus a final verdict line.
void print_summary(const VerifySummary& summary, std::ostream& os);

}  // namespace qcorr
