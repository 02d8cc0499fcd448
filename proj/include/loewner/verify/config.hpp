#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loewner/generators.hpp"
#include "loewner/integrator.hpp"
#include "loewner/verify/json_io.hpp"

namespace loewner::verify {

enum class FixedPointRole { Brfp, Dw };

struct FixedPointSpec {
  BoundaryPoint point;
  FixedPointRole role = FixedPointRole::Brfp;
};

struct IntegrationSpec {
  double t0 = 0.0;
  double t1 = 1.0;
  ToleranceSettings tol;
};

struct GridSpec {
  std::vector<double> radii{0.3, 0.6, 0.9};
  int angles = 16;

  std::vector<Complex> points() const { return polar_grid(radii, angles); }
};

struct OutputSpec {
  std::optional<std::string> trajectory_csv;
  std::optional<std::string> report_json;
  bool combined = false;
};

/// Real-line data for the three-point (Nevanlinna) checks.
struct ThreePointSpec {
  double xi1 = -1.0;
  double xi2 = 1.0;
  std::vector<RealAtom> atoms{RealAtom{0.0, 1.0}};
  bool inside = true;
  /// Defaults to natural_targets(xi1, xi2).
  std::optional<ThreeBrfpTargets> targets;

  ThreeBrfpMap build() const;
};

struct RunConfig {
  std::shared_ptr<const FieldSpec> field;
  IntegrationSpec integration;
  GridSpec grid;
  std::vector<std::string> checks;
  std::vector<FixedPointSpec> fixed_points;
  OutputSpec output;
  /// Per-check overrides of the built-in tolerances.
  std::map<std::string, double> tolerances;
  ThreePointSpec three_point;
  bool skip_measure_validation = false;
};

/// Boundary fixed points implied by the field (Corollary fields: pi brfp, 0 dw).
std::vector<FixedPointSpec> default_fixed_points(const FieldSpec& field);

/// Throws ConfigError (syntax, semantic or unknown-check).
RunConfig parse_config(std::string_view text);

/// Canonical JSON form with every default filled in; parse_config accepts it back.
Json config_to_json(const RunConfig& config);

/// FNV-1a of the canonical dump, as "fnv1a64:<16 hex digits>".
std::string config_digest(const RunConfig& config);

}  // namespace loewner::verify
