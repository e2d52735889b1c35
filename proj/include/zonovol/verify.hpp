#ifndef ZONOVOL_VERIFY_HPP
#define ZONOVOL_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace zonovol {

struct VerifyOptions {
  int dim_lo = 2;
  int dim_hi = 4;
  int trials = 50;          ///< randomized instances per property per dimension
  std::uint64_t seed = 42;
  int fuzz_instances = 10000;  ///< positivity fuzz cases
};

struct PropertyOutcome {
  std::string name;
  long long checks = 0;
  long long failures = 0;
  std::string first_failure;
};

/// Outcome of the randomized self-check suite. Identical options produce
/// identical reports (timings excluded, none are recorded).
struct VerifyReport {
  std::vector<PropertyOutcome> properties;

  long long total_checks() const;
  long long total_failures() const;
  bool all_passed() const { return total_failures() == 0; }
};

/// Cross-validates the volume methods on random systems and checks the
/// structural laws they rely on: positivity of the ascending-power
/// determinants, horizon monotonicity, covariance under linear maps,
/// convergence of the stepped table to the closed-form limit, the work
/// counters, and rejection of malformed arguments.
VerifyReport run_verification(const VerifyOptions& opts);

}  // namespace zonovol

#endif
