#include "loewner/verify/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>

#include "loewner/boundary.hpp"

namespace loewner::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::map<std::string, double, std::less<>>& tolerance_table() {
  static const std::map<std::string, double, std::less<>> table{
      {"arc_lemma", 1e-6},         {"chain_rule", 1e-3},        {"cowen_pommerenke", 1e-6},
      {"dilation_monotone", 1e-6}, {"dilation_tracking", 1e-4}, {"disk_invariance", 0.0},
      {"half_plane_julia", 1e-12}, {"julia", 1e-8},             {"nevanlinna_beta", 1e-4},
      {"oracle_agreement", 1e-8},  {"schwarz_pick", 1e-10},     {"semigroup", 1e-8},
  };
  return table;
}

Json point_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

// Shared state of one check run.
struct Context {
  const RunConfig& cfg;
  std::shared_ptr<const FieldSpec> field;
  ToleranceSettings tol;
  double s;
  double t;
  std::vector<Complex> grid;

  explicit Context(const RunConfig& c)
      : cfg(c),
        field(c.field),
        tol(c.integration.tol),
        s(c.integration.t0),
        t(c.integration.t1),
        grid(c.grid.points()) {}

  EvolutionEvaluator map(double a, double b) const { return evolution_map(field, a, b, tol); }

  double dilation(BoundaryPoint sigma, double a, double b) const {
    if (a == b) return 1.0;
    const auto est = angular_derivative(map(a, b), sigma, sigma);
    return est.diverged ? kNaN : est.value;
  }
};

// Time pieces of [a, b] on which the field is constant.
std::vector<std::pair<double, double>> pieces(const FieldSpec& f, double a, double b) {
  std::vector<double> nodes{a};
  for (double x : f.breakpoints_in(a, b)) nodes.push_back(x);
  nodes.push_back(b);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) out.emplace_back(nodes[i], nodes[i + 1]);
  return out;
}

// Dilation of phi_{a,b} at sigma predicted from the field alone. Corollary fields
// use the closed forms e^{b-a} at -1 and exp(-int nu_u({-1}) du) at +1; other
// fields integrate the real part of the null quotient over constant pieces.
std::optional<double> predicted_dilation(const FieldSpec& f, BoundaryPoint sigma, double a,
                                         double b) {
  if (a == b) return 1.0;
  if (f.kind() == FieldKind::Corollary) {
    if (sigma.distance(BoundaryPoint(kPi)) <= 1e-12) return std::exp(b - a);
    if (sigma.distance(BoundaryPoint(0.0)) <= 1e-12) {
      double mass = 0.0;
      for (const auto& [lo, hi] : pieces(f, a, b))
        mass += (hi - lo) * measure_at(*f.schedule(), 0.5 * (lo + hi)).mass_at(BoundaryPoint(kPi));
      return std::exp(-mass);
    }
    return std::nullopt;
  }
  double rate = 0.0;
  for (const auto& [lo, hi] : pieces(f, a, b)) {
    const auto nq = null_quotient(f, sigma, 0.5 * (lo + hi));
    if (nq.diverged) return std::nullopt;
    rate += (hi - lo) * nq.value.real();
  }
  return std::exp(rate);
}

CheckOutcome not_applicable(CheckOutcome out, const std::string& why) {
  out.max_residual = 0.0;
  out.notes = "not applicable: " + why;
  return out;
}

// --- individual checks ------------------------------------------------------

CheckOutcome check_semigroup(const Context& c, CheckOutcome out) {
  double worst = 0.0;
  const auto id = c.map(c.s, c.s);
  for (const Complex z : c.grid)
    if (id(z) != z) {
      out.max_residual = kInf;
      out.worst_input = Json{{"z", point_json(z)}, {"law", "EF1"}};
      out.notes = "EF1 violated";
      return out;
    }
  if (c.t > c.s) {
    const auto full = c.map(c.s, c.t);
    for (const Complex z : c.grid) {
      const Complex w = full(z);
      for (int k = 1; k <= 3; ++k) {
        const double u = c.s + 0.25 * k * (c.t - c.s);
        const double d = std::abs(w - c.map(u, c.t)(c.map(c.s, u)(z)));
        if (d > worst || out.worst_input.is_null()) {
          worst = std::max(worst, d);
          out.worst_input = Json{{"z", point_json(z)}, {"u", u}};
        }
      }
    }
  }
  out.max_residual = worst;
  out.notes = "EF1 exact; EF2 residual over u in {1/4, 1/2, 3/4}";
  return out;
}

CheckOutcome check_disk_invariance(const Context& c, CheckOutcome out) {
  double max_abs = 0.0;
  std::size_t samples = 0;
  for (const Complex z : c.grid) {
    const auto traj = integrate_trajectory(*c.field, c.s, c.t, z, c.tol);
    for (const auto& smp : traj.samples) {
      ++samples;
      if (std::abs(smp.w) >= max_abs) {
        max_abs = std::abs(smp.w);
        out.worst_input = Json{{"z", point_json(z)}, {"t", smp.t}};
      }
    }
  }
  out.max_residual = std::max(0.0, max_abs - (1.0 - c.tol.boundary_guard));
  out.notes = "max |w| = " + Json(max_abs).dump() + " over " + std::to_string(samples) +
              " accepted samples";
  return out;
}

CheckOutcome check_schwarz_pick(const Context& c, CheckOutcome out) {
  const double radius = *std::max_element(c.cfg.grid.radii.begin(), c.cfg.grid.radii.end());
  std::mt19937_64 rng(0x5c4a27b1d3e1f00dULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&] {
    const double r = radius * std::sqrt(unit(rng));
    return std::polar(r, kTwoPi * unit(rng));
  };
  const auto m = c.map(c.s, c.t);
  double worst = -kInf;
  for (int k = 0; k < 100; ++k) {
    const Complex z1 = draw();
    const Complex z2 = draw();
    const double d = pseudo_hyperbolic_distance(m(z1), m(z2)) - pseudo_hyperbolic_distance(z1, z2);
    if (d > worst) {
      worst = d;
      out.worst_input = Json{{"z1", point_json(z1)}, {"z2", point_json(z2)}};
    }
  }
  out.max_residual = worst;
  out.notes = "100 seeded random pairs";
  return out;
}

CheckOutcome check_julia_inequality(const Context& c, CheckOutcome out) {
  if (c.cfg.fixed_points.empty()) return not_applicable(out, "no boundary fixed points");
  const auto m = c.map(c.s, c.t);
  double worst = -kInf;
  for (const auto& fp : c.cfg.fixed_points) {
    const double measured = c.dilation(fp.point, c.s, c.t);
    if (!std::isfinite(measured)) {
      out.max_residual = kNaN;
      out.worst_input = Json{{"sigma", fp.point.angle()}};
      out.notes = "angular derivative diverged";
      return out;
    }
    const auto predicted = predicted_dilation(*c.field, fp.point, c.s, c.t);
    const double A = (1.0 + 1e-6) * (predicted ? std::min(measured, *predicted) : measured);
    const auto r = check_julia(m, fp.point, fp.point, A, c.grid);
    if (r.max_violation > worst) {
      worst = r.max_violation;
      out.worst_input = Json{{"sigma", fp.point.angle()}, {"z", point_json(r.worst_point)},
                             {"A", A}, {"measured", measured}};
      if (predicted) out.worst_input["predicted"] = *predicted;
    }
  }
  out.max_residual = worst;
  out.notes = "A = (1 + 1e-6) min(measured, predicted dilation)";
  return out;
}

CheckOutcome check_cowen_pommerenke(const Context& c, CheckOutcome out) {
  const auto& fps = c.cfg.fixed_points;
  if (fps.size() < 2) return not_applicable(out, "fewer than two boundary fixed points");
  std::vector<double> d;
  for (const auto& fp : fps) d.push_back(c.dilation(fp.point, c.s, c.t));
  double worst = -kInf;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const double r = cowen_pommerenke_residual(d[i], d[j]);
      if (!(r <= worst)) {
        worst = std::isnan(r) ? kNaN : r;
        out.worst_input = Json{{"sigma1", fps[i].point.angle()}, {"sigma2", fps[j].point.angle()},
                               {"product", d[i] * d[j]}};
      }
      if (std::isnan(worst)) break;
    }
  out.max_residual = worst;
  out.notes = "residual 1 - product of dilations";
  return out;
}

CheckOutcome check_dilation_tracking(const Context& c, CheckOutcome out) {
  if (c.t == c.s) return not_applicable(out, "empty time window");
  double worst = -kInf;
  int tracked = 0;
  for (const auto& fp : c.cfg.fixed_points) {
    for (int k = 1; k <= 4; ++k) {
      const double u = c.s + 0.25 * k * (c.t - c.s);
      const auto predicted = predicted_dilation(*c.field, fp.point, c.s, u);
      if (!predicted) break;
      ++tracked;
      const double measured = c.dilation(fp.point, c.s, u);
      const double rel = std::abs(measured / *predicted - 1.0);
      if (!(rel <= worst)) {
        worst = std::isnan(rel) ? kNaN : rel;
        out.worst_input = Json{{"sigma", fp.point.angle()}, {"t", u}, {"measured", measured},
                               {"predicted", *predicted}};
      }
    }
  }
  if (tracked == 0) return not_applicable(out, "no fixed point with a predicted dilation");
  out.max_residual = worst;
  out.notes = "relative deviation from the predicted dilation";
  return out;
}

CheckOutcome check_dilation_monotone(const Context& c, CheckOutcome out) {
  if (c.cfg.fixed_points.empty()) return not_applicable(out, "no boundary fixed points");
  if (c.t == c.s) return not_applicable(out, "empty time window");
  double worst = -kInf;
  double max_slope = 0.0;
  for (const auto& fp : c.cfg.fixed_points) {
    std::vector<double> d;
    for (int k = 0; k <= 20; ++k)
      d.push_back(c.dilation(fp.point, c.s, c.s + k * (c.t - c.s) / 20));
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
      const double step = (d[k + 1] - d[k]) / d[k];
      double r = fp.role == FixedPointRole::Brfp ? -step : step;
      if (fp.role == FixedPointRole::Dw) r = std::max(r, d[k + 1] - 1.0);
      max_slope = std::max(max_slope, std::abs(d[k + 1] - d[k]) * 20 / (c.t - c.s));
      if (!(r <= worst)) {
        worst = std::isnan(r) ? kNaN : r;
        out.worst_input = Json{{"sigma", fp.point.angle()},
                               {"t", c.s + (k + 1) * (c.t - c.s) / 20},
                               {"role", fp.role == FixedPointRole::Dw ? "dw" : "brfp"}};
      }
    }
  }
  out.max_residual = worst;
  out.notes = "21-point grid; proxy for local absolute continuity, max difference quotient " +
              Json(max_slope).dump();
  return out;
}

CheckOutcome check_chain_rule(const Context& c, CheckOutcome out) {
  if (c.cfg.fixed_points.empty()) return not_applicable(out, "no boundary fixed points");
  if (c.t == c.s) return not_applicable(out, "empty time window");
  const double u = 0.5 * (c.s + c.t);
  double worst = -kInf;
  for (const auto& fp : c.cfg.fixed_points) {
    const double full = c.dilation(fp.point, c.s, c.t);
    const double split = c.dilation(fp.point, c.s, u) * c.dilation(fp.point, u, c.t);
    const double rel = std::abs(full - split) / full;
    if (!(rel <= worst)) {
      worst = std::isnan(rel) ? kNaN : rel;
      out.worst_input = Json{{"sigma", fp.point.angle()}, {"full", full}, {"split", split}};
    }
  }
  out.max_residual = worst;
  out.notes = "relative |d(s,t) - d(s,u) d(u,t)|, u = midpoint";
  return out;
}

CheckOutcome check_arc_lemma(const Context& c, CheckOutcome out) {
  const ThreeBrfpMap f = c.cfg.three_point.build();
  const Complex c0 = f(Complex{});
  const auto normalize = [c0](Complex w) { return (w - c0) / (1.0 - std::conj(c0) * w); };
  const auto res = check_arc_length([&](double th) { return normalize(f.boundary_value(th)); },
                                    [&](Complex z) { return normalize(f(z)); }, f.outer_arc());
  const auto [a, b] = f.outer_arc();
  out.worst_input = Json{{"arc", {a, b}}};
  if (!res.applicable) {
    out.max_residual = kNaN;
    out.notes = "not applicable: " + res.note;
    return out;
  }
  out.max_residual = res.len_arc - res.len_image;
  out.notes = "len_arc " + Json(res.len_arc).dump() + ", len_image " + Json(res.len_image).dump();
  return out;
}

CheckOutcome check_oracle_agreement(const Context& c, CheckOutcome out) {
  const std::size_t stride = std::max<std::size_t>(1, (c.grid.size() + 15) / 16);
  double worst = 0.0;
  int used = 0;
  for (std::size_t i = 0; i < c.grid.size() && used < 16; i += stride, ++used) {
    const Complex z = c.grid[i];
    const double d = std::abs(evolve(*c.field, c.s, c.t, z, c.tol) -
                              rk4_oracle(*c.field, c.s, c.t, z, 100000));
    if (d >= worst) {
      worst = d;
      out.worst_input = Json{{"z", point_json(z)}};
    }
  }
  out.max_residual = worst;
  out.notes = "fixed-step RK4 with 1e5 steps on " + std::to_string(used) + " grid points";
  return out;
}

CheckOutcome check_half_plane(const Context& c, CheckOutcome out) {
  const ThreeBrfpMap f = c.cfg.three_point.build();
  const std::vector<double> xs{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0};
  const std::vector<double> ys{0.1, 0.5, 1.0, 2.0};
  const auto res = check_half_plane_julia(f.rep(), upper_half_plane_grid(xs, ys));
  out.max_residual = res.max_violation;
  out.worst_input = Json{{"z", point_json(res.worst_point)}};
  out.notes = "max of beta Im z - Im Phi(z) on a 32-point grid";
  return out;
}

CheckOutcome check_nevanlinna_beta(const Context& c, CheckOutcome out) {
  const auto& tp = c.cfg.three_point;
  const ThreeBrfpMap f = tp.build();
  const double beta = f.rep().beta;
  const auto est = angular_derivative([&](Complex z) { return f(z); }, f.targets().tau,
                                      f.targets().tau);
  double worst = est.diverged ? kNaN : std::abs(est.value * beta - 1.0);
  out.worst_input = Json{{"beta", beta}, {"measured_dilation_tau", est.value}};
  if (tp.inside) {
    double formula = 1.0;
    for (const auto& a : tp.atoms)
      formula += a.weight * (1.0 + a.location * a.location) /
                 ((tp.xi2 - a.location) * (a.location - tp.xi1));
    worst = std::max(worst, std::abs(beta - formula) / beta);
    worst = std::max(worst, est.value - 1.0);
    out.worst_input["beta_formula"] = formula;
  }
  out.max_residual = worst;
  out.notes = "relative |f'(tau) beta - 1|, solved vs closed-form beta, f'(tau) <= 1";
  return out;
}

using CheckFn = CheckOutcome (*)(const Context&, CheckOutcome);

const std::map<std::string, CheckFn, std::less<>>& check_table() {
  static const std::map<std::string, CheckFn, std::less<>> table{
      {"arc_lemma", check_arc_lemma},
      {"chain_rule", check_chain_rule},
      {"cowen_pommerenke", check_cowen_pommerenke},
      {"dilation_monotone", check_dilation_monotone},
      {"dilation_tracking", check_dilation_tracking},
      {"disk_invariance", check_disk_invariance},
      {"half_plane_julia", check_half_plane},
      {"julia", check_julia_inequality},
      {"nevanlinna_beta", check_nevanlinna_beta},
      {"oracle_agreement", check_oracle_agreement},
      {"schwarz_pick", check_schwarz_pick},
      {"semigroup", check_semigroup},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& check_registry() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : check_table()) v.push_back(name);
    return v;
  }();
  return names;
}

bool is_registered_check(std::string_view name) { return check_table().contains(name); }

double default_tolerance(std::string_view name) {
  const auto it = tolerance_table().find(name);
  if (it == tolerance_table().end()) throw DomainError("unknown check " + std::string(name));
  return it->second;
}

CheckOutcome run_check(const std::string& name, const RunConfig& config) {
  const auto it = check_table().find(name);
  if (it == check_table().end()) throw DomainError("unknown check " + name);
  CheckOutcome out;
  out.name = name;
  const auto ov = config.tolerances.find(name);
  out.tolerance_used = ov != config.tolerances.end() ? ov->second : default_tolerance(name);
  try {
    out = it->second(Context(config), out);
  } catch (const IntegrationFailure& e) {
    out.max_residual = kNaN;
    out.integration_failure = true;
    out.notes = std::string("integration failure: ") + e.what();
    out.worst_input = Json{{"t", e.t()}, {"w", point_json(e.w())}};
  }
  out.pass = std::isfinite(out.max_residual) && out.max_residual <= out.tolerance_used;
  return out;
}

}  // namespace loewner::verify
