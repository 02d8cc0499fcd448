#include "loewner/verify/report.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "loewner/verify/parallel.hpp"

namespace loewner::verify {

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

bool VerificationReport::any_integration_failure() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const auto& c) { return c.integration_failure; });
}

VerificationReport run_verify(const RunConfig& config, unsigned threads) {
  std::vector<std::string> names = config.checks;
  std::sort(names.begin(), names.end());
  VerificationReport report;
  report.config_digest = config_digest(config);
  report.checks.resize(names.size());
  parallel_for(names.size(), threads,
               [&](std::size_t i) { report.checks[i] = run_check(names[i], config); });
  return report;
}

std::string emit_report(const VerificationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j{{"name", c.name},
           {"pass", c.pass},
           {"tolerance_used", c.tolerance_used},
           {"worst_input", c.worst_input},
           {"notes", c.notes},
           {"residual_finite", std::isfinite(c.max_residual)}};
    j["max_residual"] = std::isfinite(c.max_residual) ? Json(c.max_residual) : Json();
    checks.push_back(std::move(j));
  }
  const std::string eigen = std::to_string(EIGEN_WORLD_VERSION) + "." +
                            std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION);
  const std::string json = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                           std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  const Json out{{"checks", checks},
                 {"config_digest", report.config_digest},
                 {"versions",
                  {{"loewner", kToolVersion}, {"eigen", eigen}, {"nlohmann_json", json}}}};
  return out.dump(2) + "\n";
}

}  // namespace loewner::verify
