#include "loewner/verify/json_io.hpp"

#include <cmath>
#include <limits>

namespace loewner::verify {

namespace {

std::string where(const std::string& path) { return path.empty() ? "/" : path; }

[[noreturn]] void semantic(const std::string& path, const std::string& message) {
  throw ConfigError(ConfigError::Kind::Semantic, where(path), message);
}

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) semantic(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) semantic(path + "/" + key, "missing required value");
  return *it;
}

Complex tau_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) semantic(path, "expected {\"re\",\"im\"} or {\"angle\"}");
  if (j.contains("angle")) {
    require_keys(j, {"angle"}, path);
    return BoundaryPoint(get_number(j, "angle", path)).value();
  }
  require_keys(j, {"re", "im"}, path);
  return {get_number(j, "re", path), get_number(j, "im", path)};
}

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

// Runs a core constructor and rewrites its validation message under `path`.
template <typename F>
auto at_path(const std::string& path, F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    semantic(path, e.what());
  }
}

}  // namespace

ConfigError::ConfigError(Kind kind, std::string path, const std::string& message,
                         std::size_t offset)
    : Error(kind == Kind::Syntax
                ? "syntax error at byte " + std::to_string(offset) + ": " + message
                : path + ": " + message),
      kind_(kind),
      path_(std::move(path)),
      offset_(offset) {}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ConfigError(ConfigError::Kind::Syntax, "", e.what(), e.byte);
  }
}

double get_number(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = member(obj, key, path);
  if (!v.is_number()) semantic(path + "/" + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) semantic(path + "/" + key, "expected a finite number");
  return x;
}

double get_number_or(const Json& obj, const std::string& key, const std::string& path,
                     double fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  return get_number(obj, key, path);
}

void require_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                  const std::string& path) {
  if (!obj.is_object()) semantic(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) semantic(path + "/" + key, "unknown key");
  }
}

AtomicCircleMeasure measure_from_json(const Json& j, const std::string& path) {
  require_keys(j, {"atoms", "excluded_angle"}, path);
  const Json& atoms = member(j, "atoms", path);
  if (!atoms.is_array()) semantic(path + "/atoms", "expected an array");
  std::vector<CircleAtom> out;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const std::string p = path + "/atoms/" + std::to_string(k);
    require_keys(atoms[k], {"angle", "weight"}, p);
    const double angle = get_number(atoms[k], "angle", p);
    out.push_back(CircleAtom{BoundaryPoint(angle), get_number(atoms[k], "weight", p)});
  }
  std::optional<BoundaryPoint> excluded;
  if (j.contains("excluded_angle") && !j.at("excluded_angle").is_null())
    excluded = BoundaryPoint(get_number(j, "excluded_angle", path));
  return at_path(path, [&] { return AtomicCircleMeasure(std::move(out), excluded); });
}

Json measure_to_json(const AtomicCircleMeasure& m) {
  Json atoms = Json::array();
  for (const auto& a : m.atoms())
    atoms.push_back(Json{{"angle", a.position.angle()}, {"weight", a.weight}});
  Json j{{"atoms", atoms}};
  j["excluded_angle"] = m.excluded() ? Json(m.excluded()->angle()) : Json(nullptr);
  return j;
}

MeasureSchedule schedule_from_json(const Json& j, const std::string& path) {
  require_keys(j, {"segments", "hold_last"}, path);
  const Json& segs = member(j, "segments", path);
  if (!segs.is_array() || segs.empty()) semantic(path + "/segments", "expected a non-empty array");
  std::vector<ScheduleSegment> out;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const std::string p = path + "/segments/" + std::to_string(k);
    require_keys(segs[k], {"t0", "t1", "measure"}, p);
    const double t0 = get_number(segs[k], "t0", p);
    const double t1 =
        get_number_or(segs[k], "t1", p, std::numeric_limits<double>::infinity());
    out.push_back(ScheduleSegment{t0, t1, measure_from_json(member(segs[k], "measure", p),
                                                            p + "/measure")});
  }
  bool hold_last = false;
  if (j.contains("hold_last")) {
    if (!j.at("hold_last").is_boolean()) semantic(path + "/hold_last", "expected a boolean");
    hold_last = j.at("hold_last").get<bool>();
  }
  return at_path(path, [&] { return MeasureSchedule(std::move(out), hold_last); });
}

Json schedule_to_json(const MeasureSchedule& s) {
  Json segs = Json::array();
  for (const auto& seg : s.segments()) {
    Json js{{"t0", seg.t_start}, {"measure", measure_to_json(seg.measure)}};
    js["t1"] = std::isinf(seg.t_end) ? Json(nullptr) : Json(seg.t_end);
    segs.push_back(js);
  }
  return Json{{"segments", segs}, {"hold_last", s.hold_last()}};
}

FieldSpec field_from_json(const Json& j, const std::string& path, bool skip_probability) {
  if (!j.is_object()) semantic(path, "expected an object");
  const Json& kind_j = member(j, "kind", path);
  if (!kind_j.is_string()) semantic(path + "/kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();

  if (kind == "corollary") {
    require_keys(j, {"kind", "schedule"}, path);
    const std::string sp = path + "/schedule";
    MeasureSchedule sched = schedule_from_json(member(j, "schedule", path), sp);
    if (skip_probability) return FieldSpec::corollary_unchecked(std::move(sched));
    for (std::size_t k = 0; k < sched.segments().size(); ++k) {
      const std::string mp = sp + "/segments/" + std::to_string(k) + "/measure";
      at_path(mp, [&] {
        validate_corollary_measure(sched.segments()[k].measure);
        return 0;
      });
    }
    return at_path(path, [&] { return FieldSpec::corollary(std::move(sched)); });
  }

  if (kind == "berkson_porta") {
    require_keys(j, {"kind", "tau", "p"}, path);
    const Complex tau = tau_from_json(member(j, "tau", path), path + "/tau");
    const Json& p = member(j, "p", path);
    const std::string pp = path + "/p";
    if (!p.is_object()) semantic(pp, "expected an object");
    if (p.contains("const_re") || p.contains("const_im")) {
      require_keys(p, {"const_re", "const_im"}, pp);
      const Complex c{get_number(p, "const_re", pp), get_number_or(p, "const_im", pp, 0.0)};
      return at_path(pp, [&] { return FieldSpec::berkson_porta(tau, c); });
    }
    const double imag = get_number_or(p, "imag_const", pp, 0.0);
    if (p.contains("measure")) {
      require_keys(p, {"measure", "imag_const"}, pp);
      auto mu = measure_from_json(p.at("measure"), pp + "/measure");
      return at_path(pp, [&] { return FieldSpec::berkson_porta(tau, std::move(mu), imag); });
    }
    if (p.contains("schedule")) {
      require_keys(p, {"schedule", "imag_const"}, pp);
      auto sched = schedule_from_json(p.at("schedule"), pp + "/schedule");
      return at_path(pp, [&] { return FieldSpec::berkson_porta(tau, std::move(sched), imag); });
    }
    semantic(pp, "expected const_re/const_im, measure or schedule");
  }

  if (kind == "reciprocal") {
    require_keys(j, {"kind", "tau", "data"}, path);
    const Complex tau = tau_from_json(member(j, "tau", path), path + "/tau");
    const Json& data = member(j, "data", path);
    if (!data.is_array() || data.empty()) semantic(path + "/data", "expected a non-empty array");
    std::vector<ReciprocalTerm> terms;
    for (std::size_t k = 0; k < data.size(); ++k) {
      const std::string p = path + "/data/" + std::to_string(k);
      require_keys(data[k], {"angle", "alpha"}, p);
      terms.push_back(
          ReciprocalTerm{BoundaryPoint(get_number(data[k], "angle", p)),
                         get_number(data[k], "alpha", p)});
    }
    return at_path(path + "/data", [&] { return FieldSpec::reciprocal(tau, std::move(terms)); });
  }

  semantic(path + "/kind", "unknown field kind '" + kind +
                               "' (expected berkson_porta, reciprocal or corollary)");
}

Json field_to_json(const FieldSpec& f) {
  struct Visitor {
    Json operator()(const BerksonPortaField& bp) const {
      Json p;
      if (const auto* c = std::get_if<ConstantHerglotz>(&bp.p)) {
        p = Json{{"const_re", c->value.real()}, {"const_im", c->value.imag()}};
      } else if (const auto* m = std::get_if<MeasureHerglotz>(&bp.p)) {
        p = Json{{"measure", measure_to_json(m->measure)}, {"imag_const", m->imag_const}};
      } else {
        const auto& s = std::get<ScheduledHerglotz>(bp.p);
        p = Json{{"schedule", schedule_to_json(s.schedule)}, {"imag_const", s.imag_const}};
      }
      return Json{{"kind", "berkson_porta"}, {"tau", complex_to_json(bp.tau)}, {"p", p}};
    }
    Json operator()(const ReciprocalField& r) const {
      Json data = Json::array();
      for (const auto& a : r.terms.atoms())
        data.push_back(Json{{"angle", a.position.angle()}, {"alpha", a.weight}});
      return Json{{"kind", "reciprocal"}, {"tau", complex_to_json(r.tau)}, {"data", data}};
    }
    Json operator()(const CorollaryField& c) const {
      return Json{{"kind", "corollary"}, {"schedule", schedule_to_json(c.schedule)}};
    }
  };
  return std::visit(Visitor{}, f.data());
}

}  // namespace loewner::verify
