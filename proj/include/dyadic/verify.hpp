#pragma once

#include "dyadic/dyadic_function.hpp"
#include "dyadic/io.hpp"

#include <string>
#include <vector>

namespace dyadic {

enum class SuiteStatus { pass, fail, skipped };

const char* to_string(SuiteStatus status);

struct SuiteResult {
  std::string name;
  SuiteStatus status = SuiteStatus::pass;
  std::size_t checks = 0;
  std::string witness;  // first failing instance, or the reason for a skip
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool passed() const;  // no suite failed; skips are fine
};

struct VerifyOptions {
  double tol = 1e-9;      // interval norm tolerance and the slack on power/L^q bounds
  double exp_tol = 1e-12; // slack on the exponential and logarithmic bounds
  int lambda_points = 32;
  int max_points = 256;   // cap on cell-aligned t values per suite
  // Fault injection: every right-hand side is multiplied by this before comparing.
  // 1 is the honest check; tests use values < 1 to confirm that failures are reported.
  double rhs_scale = 1.0;
};

/// lemma21 lemma22 lemma23 thm1 thm2 thm31 remark31 thm3 thm4 thm5 cor1 cz
const std::vector<std::string>& all_suites();

/// Splits "a,b,c" and checks every name; "all" expands to every suite. Unknown names throw InputError.
std::vector<std::string> parse_suites(const std::string& list);

/// Runs the named suites against f. Suites whose hypotheses f does not meet (sign, GR range)
/// report skipped with the reason.
VerifyReport verify_all(const DyadicFunction& f, const std::vector<std::string>& suites,
                        const VerifyOptions& options = {});

Json to_json(const VerifyReport& report);

}  // namespace dyadic
