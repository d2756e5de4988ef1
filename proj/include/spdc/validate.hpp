#pragma once

// Cross-method consistency checks run by the `validate` subcommand.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spdc/config.hpp"

namespace spdc {

/// A random delay/filter sample for method comparisons.
struct RateTuple {
  double delay = 0.0;  ///< fs
  double gamma = 0.0;
  double beta = 0.0;   ///< fs
};

/// gamma in [0, 8], beta / tau1 in [0.2, 2], |T| <= 4 tau1 + 8 beta.
std::vector<RateTuple> random_rate_tuples(int count, double tau1, std::uint64_t seed);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationOptions {
  int tuples = 40;
  std::uint64_t seed = 20240611;
};

/// Runs every check; never throws for a failed check (numerical errors are
/// reported as failures).
std::vector<CheckResult> run_validation(const SimulationConfig& config,
                                        const ValidationOptions& options = {});

/// One `PASS name: detail` / `FAIL name: detail` line per check. Returns
/// true when all passed.
bool print_report(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace spdc
