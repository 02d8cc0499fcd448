#pragma once

#include <string>
#include <vector>

#include "loewner/verify/checks.hpp"

namespace loewner::verify {

inline constexpr const char* kToolVersion = "0.1.0";

struct VerificationReport {
  std::vector<CheckOutcome> checks;  // sorted by name
  std::string config_digest;

  bool all_pass() const;
  bool any_integration_failure() const;
};

/// Runs every requested check (concurrently, up to `threads` workers) and
/// assembles the report in name order.
VerificationReport run_verify(const RunConfig& config, unsigned threads);

/// Canonical JSON: sorted keys, shortest round-trip floats, trailing newline.
std::string emit_report(const VerificationReport& report);

}  // namespace loewner::verify
