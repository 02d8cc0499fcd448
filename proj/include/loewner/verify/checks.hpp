#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "loewner/verify/config.hpp"

namespace loewner::verify {

/// pass iff max_residual <= tolerance_used (a non-finite residual fails).
struct CheckOutcome {
  std::string name;
  bool pass = false;
  double max_residual = 0.0;
  double tolerance_used = 0.0;
  Json worst_input;
  std::string notes;
  /// Set when an IntegrationFailure aborted the check.
  bool integration_failure = false;
};

/// Registered check names in canonical (sorted) order.
const std::vector<std::string>& check_registry();
bool is_registered_check(std::string_view name);
double default_tolerance(std::string_view name);

/// Runs one registered check against the configuration.
CheckOutcome run_check(const std::string& name, const RunConfig& config);

}  // namespace loewner::verify
