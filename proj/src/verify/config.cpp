#include "loewner/verify/config.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>

#include "loewner/verify/checks.hpp"

namespace loewner::verify {

namespace {

[[noreturn]] void semantic(const std::string& path, const std::string& message) {
  throw ConfigError(ConfigError::Kind::Semantic, path, message);
}

std::string registry_list() {
  std::string s;
  for (const auto& name : check_registry()) s += (s.empty() ? "" : ", ") + name;
  return s;
}

[[noreturn]] void unknown_check(const std::string& path, const std::string& name) {
  throw ConfigError(ConfigError::Kind::UnknownCheck, path,
                    "unknown check '" + name + "'; registered checks: " + registry_list());
}

bool get_bool_or(const Json& obj, const std::string& key, const std::string& path,
                 bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) semantic(path + "/" + key, "expected a boolean");
  return obj.at(key).get<bool>();
}

std::optional<std::string> get_path_or_null(const Json& obj, const std::string& key,
                                            const std::string& path) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  if (!obj.at(key).is_string()) semantic(path + "/" + key, "expected a string or null");
  return obj.at(key).get<std::string>();
}

const char* role_name(FixedPointRole r) { return r == FixedPointRole::Dw ? "dw" : "brfp"; }

IntegrationSpec parse_integration(const Json& j) {
  const std::string p = "/integration";
  require_keys(j, {"t0", "t1", "rel_tol", "abs_tol", "max_step", "min_step", "boundary_guard"}, p);
  IntegrationSpec s;
  s.t0 = get_number_or(j, "t0", p, s.t0);
  s.t1 = get_number_or(j, "t1", p, s.t1);
  if (!(s.t0 >= 0.0)) semantic(p + "/t0", "must be >= 0");
  if (!(s.t0 <= s.t1)) semantic(p + "/t1", "must be >= t0");
  s.tol.rel_tol = get_number_or(j, "rel_tol", p, s.tol.rel_tol);
  s.tol.abs_tol = get_number_or(j, "abs_tol", p, s.tol.abs_tol);
  s.tol.max_step = get_number_or(j, "max_step", p, s.tol.max_step);
  s.tol.min_step = get_number_or(j, "min_step", p, s.tol.min_step);
  s.tol.boundary_guard = get_number_or(j, "boundary_guard", p, s.tol.boundary_guard);
  try {
    s.tol.validate();
  } catch (const Error& e) {
    semantic(p, e.what());
  }
  return s;
}

GridSpec parse_grid(const Json& j) {
  const std::string p = "/grid";
  require_keys(j, {"kind", "radii", "angles"}, p);
  GridSpec g;
  if (j.contains("kind") && j.at("kind") != "polar")
    semantic(p + "/kind", "only \"polar\" grids are supported");
  if (j.contains("radii")) {
    const Json& r = j.at("radii");
    if (!r.is_array() || r.empty()) semantic(p + "/radii", "expected a non-empty array");
    g.radii.clear();
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (!r[k].is_number()) semantic(p + "/radii/" + std::to_string(k), "expected a number");
      const double x = r[k].get<double>();
      if (!(x > 0.0 && x < 1.0))
        semantic(p + "/radii/" + std::to_string(k), "radius must lie in (0, 1)");
      g.radii.push_back(x);
    }
  }
  if (j.contains("angles")) {
    const Json& a = j.at("angles");
    if (!a.is_number_integer() || a.get<long long>() < 1 || a.get<long long>() > 100000)
      semantic(p + "/angles", "expected an integer in [1, 100000]");
    g.angles = static_cast<int>(a.get<long long>());
  }
  return g;
}

ThreePointSpec parse_three_point(const Json& j) {
  const std::string p = "/three_point";
  require_keys(j, {"xi1", "xi2", "atoms", "inside", "targets"}, p);
  ThreePointSpec s;
  s.xi1 = get_number_or(j, "xi1", p, s.xi1);
  s.xi2 = get_number_or(j, "xi2", p, s.xi2);
  s.inside = get_bool_or(j, "inside", p, s.inside);
  if (j.contains("atoms")) {
    const Json& a = j.at("atoms");
    if (!a.is_array()) semantic(p + "/atoms", "expected an array");
    s.atoms.clear();
    for (std::size_t k = 0; k < a.size(); ++k) {
      const std::string ap = p + "/atoms/" + std::to_string(k);
      require_keys(a[k], {"location", "weight"}, ap);
      s.atoms.push_back(
          RealAtom{get_number(a[k], "location", ap), get_number(a[k], "weight", ap)});
    }
  }
  if (j.contains("targets") && !j.at("targets").is_null()) {
    const Json& t = j.at("targets");
    const std::string tp = p + "/targets";
    require_keys(t, {"sigma1", "sigma2", "tau"}, tp);
    s.targets = ThreeBrfpTargets{BoundaryPoint(get_number(t, "sigma1", tp)),
                                 BoundaryPoint(get_number(t, "sigma2", tp)),
                                 BoundaryPoint(get_number(t, "tau", tp))};
  }
  try {
    (void)s.build();
  } catch (const Error& e) {
    semantic(p, e.what());
  }
  return s;
}

std::vector<FixedPointSpec> parse_fixed_points(const Json& j, const FieldSpec& field) {
  const std::string p = "/fixed_points";
  if (!j.is_array()) semantic(p, "expected an array");
  const auto allowed = default_fixed_points(field);
  std::vector<FixedPointSpec> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string fp = p + "/" + std::to_string(k);
    require_keys(j[k], {"angle", "expected_role"}, fp);
    FixedPointSpec s{BoundaryPoint(get_number(j[k], "angle", fp)), FixedPointRole::Brfp};
    if (!j[k].contains("expected_role") || !j[k].at("expected_role").is_string())
      semantic(fp + "/expected_role", "expected \"brfp\" or \"dw\"");
    const std::string role = j[k].at("expected_role").get<std::string>();
    if (role == "dw")
      s.role = FixedPointRole::Dw;
    else if (role != "brfp")
      semantic(fp + "/expected_role", "expected \"brfp\" or \"dw\"");
    bool match = false;
    for (const auto& a : allowed)
      match = match || (a.point.distance(s.point) <= 1e-12 && a.role == s.role);
    if (!match)
      semantic(fp, "not a boundary fixed point of this field with role " +
                       std::string(role_name(s.role)));
    for (const auto& prev : out)
      if (prev.point.distance(s.point) <= 1e-12) semantic(fp, "duplicate fixed point");
    out.push_back(s);
  }
  if (field.kind() == FieldKind::Corollary && out.size() != allowed.size())
    semantic(p, "corollary fields have exactly the fixed points pi (brfp) and 0 (dw)");
  return out;
}

}  // namespace

ThreeBrfpMap ThreePointSpec::build() const {
  RealAtomicMeasure measure(atoms, xi1, xi2, inside);
  return build_three_brfp_map(xi1, xi2, std::move(measure),
                              targets ? *targets : natural_targets(xi1, xi2));
}

std::vector<FixedPointSpec> default_fixed_points(const FieldSpec& field) {
  std::vector<FixedPointSpec> out;
  if (field.kind() == FieldKind::Corollary) {
    out.push_back({BoundaryPoint(kPi), FixedPointRole::Brfp});
    out.push_back({BoundaryPoint(0.0), FixedPointRole::Dw});
    return out;
  }
  if (const auto* r = std::get_if<ReciprocalField>(&field.data()))
    for (const auto& a : r->terms.atoms()) out.push_back({a.position, FixedPointRole::Brfp});
  const Complex tau = field.tau();
  if (std::abs(tau) > 1.0 - 1e-12)
    out.push_back({BoundaryPoint::from_complex(tau), FixedPointRole::Dw});
  return out;
}

RunConfig parse_config(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object()) semantic("/", "expected a JSON object");
  require_keys(j,
               {"field", "integration", "grid", "checks", "fixed_points", "output", "tolerances",
                "three_point", "test_hooks"},
               "");

  RunConfig cfg;
  if (j.contains("test_hooks")) {
    require_keys(j.at("test_hooks"), {"skip_measure_validation"}, "/test_hooks");
    cfg.skip_measure_validation =
        get_bool_or(j.at("test_hooks"), "skip_measure_validation", "/test_hooks", false);
  }
  if (!j.contains("field")) semantic("/field", "missing required value");
  cfg.field = std::make_shared<const FieldSpec>(
      field_from_json(j.at("field"), "/field", cfg.skip_measure_validation));

  if (j.contains("integration")) cfg.integration = parse_integration(j.at("integration"));
  if (const MeasureSchedule* s = cfg.field->schedule();
      s && !s->hold_last() && cfg.integration.t1 > s->end_time())
    semantic("/integration/t1", "extends past the schedule end (set hold_last to extend)");

  if (j.contains("grid")) cfg.grid = parse_grid(j.at("grid"));

  if (j.contains("checks")) {
    const Json& c = j.at("checks");
    if (!c.is_array()) semantic("/checks", "expected an array of check names");
    for (std::size_t k = 0; k < c.size(); ++k) {
      const std::string p = "/checks/" + std::to_string(k);
      if (!c[k].is_string()) semantic(p, "expected a string");
      const std::string name = c[k].get<std::string>();
      if (!is_registered_check(name)) unknown_check(p, name);
      for (const auto& prev : cfg.checks)
        if (prev == name) semantic(p, "duplicate check '" + name + "'");
      cfg.checks.push_back(name);
    }
  } else {
    cfg.checks = check_registry();
  }

  cfg.fixed_points = j.contains("fixed_points")
                         ? parse_fixed_points(j.at("fixed_points"), *cfg.field)
                         : default_fixed_points(*cfg.field);

  if (j.contains("output")) {
    const Json& o = j.at("output");
    require_keys(o, {"trajectory_csv", "report_json", "combined"}, "/output");
    cfg.output.trajectory_csv = get_path_or_null(o, "trajectory_csv", "/output");
    cfg.output.report_json = get_path_or_null(o, "report_json", "/output");
    cfg.output.combined = get_bool_or(o, "combined", "/output", false);
  }

  if (j.contains("tolerances")) {
    const Json& t = j.at("tolerances");
    if (!t.is_object()) semantic("/tolerances", "expected an object");
    for (const auto& [name, value] : t.items()) {
      const std::string p = "/tolerances/" + name;
      if (!is_registered_check(name)) unknown_check(p, name);
      if (!value.is_number() || !(value.get<double>() >= 0.0))
        semantic(p, "expected a non-negative number");
      cfg.tolerances[name] = value.get<double>();
    }
  }

  if (j.contains("three_point")) cfg.three_point = parse_three_point(j.at("three_point"));
  return cfg;
}

Json config_to_json(const RunConfig& cfg) {
  Json j;
  j["field"] = field_to_json(*cfg.field);
  const auto& in = cfg.integration;
  j["integration"] = Json{{"t0", in.t0},
                          {"t1", in.t1},
                          {"rel_tol", in.tol.rel_tol},
                          {"abs_tol", in.tol.abs_tol},
                          {"max_step", in.tol.max_step},
                          {"min_step", in.tol.min_step},
                          {"boundary_guard", in.tol.boundary_guard}};
  j["grid"] = Json{{"kind", "polar"}, {"radii", cfg.grid.radii}, {"angles", cfg.grid.angles}};
  j["checks"] = cfg.checks;
  Json fps = Json::array();
  for (const auto& f : cfg.fixed_points)
    fps.push_back(Json{{"angle", f.point.angle()}, {"expected_role", role_name(f.role)}});
  j["fixed_points"] = fps;
  Json out{{"combined", cfg.output.combined}};
  out["trajectory_csv"] = cfg.output.trajectory_csv ? Json(*cfg.output.trajectory_csv) : Json();
  out["report_json"] = cfg.output.report_json ? Json(*cfg.output.report_json) : Json();
  j["output"] = out;
  j["tolerances"] = Json::object();
  for (const auto& [name, v] : cfg.tolerances) j["tolerances"][name] = v;
  const auto& tp = cfg.three_point;
  Json atoms = Json::array();
  for (const auto& a : tp.atoms)
    atoms.push_back(Json{{"location", a.location}, {"weight", a.weight}});
  Json three{{"xi1", tp.xi1}, {"xi2", tp.xi2}, {"atoms", atoms}, {"inside", tp.inside}};
  three["targets"] = tp.targets ? Json{{"sigma1", tp.targets->sigma1.angle()},
                                       {"sigma2", tp.targets->sigma2.angle()},
                                       {"tau", tp.targets->tau.angle()}}
                                : Json();
  j["three_point"] = three;
  j["test_hooks"] = Json{{"skip_measure_validation", cfg.skip_measure_validation}};
  return j;
}

std::string config_digest(const RunConfig& config) {
  const std::string text = config_to_json(config).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, h);
  return buf;
}

}  // namespace loewner::verify
