// Acceptance runner: one PASS/FAIL line per criterion.
// Usage: acceptance <path-to-loewner-cli> <work-dir>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "loewner/boundary.hpp"

using namespace loewner;
namespace fs = std::filesystem;

namespace {

const BoundaryPoint kOne(0.0);
const BoundaryPoint kMinusOne(kPi);
const BoundaryPoint kIPoint(kPi / 2);

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct FixedPoint {
  BoundaryPoint point;
  bool dw = false;
};

struct AcceptanceField {
  std::string name;
  FieldSpec field;
  double horizon;
  std::vector<FixedPoint> fixed_points;
};

AtomicCircleMeasure dirac(BoundaryPoint p) { return AtomicCircleMeasure({{p, 1.0}}, kOne); }

std::vector<AcceptanceField> acceptance_fields() {
  std::vector<AcceptanceField> out;
  out.push_back({"radial", FieldSpec::berkson_porta(0.0, Complex{1.0}), 1.0, {}});
  out.push_back({"parabolic", FieldSpec::berkson_porta(1.0, Complex{1.0}), 1.0, {{kOne, true}}});
  const std::vector<BoundaryPoint> cube{BoundaryPoint(0.0), BoundaryPoint(kTwoPi / 3),
                                        BoundaryPoint(2 * kTwoPi / 3)};
  out.push_back({"reciprocal",
                 FieldSpec::reciprocal(0.0, {{cube[0], 1.0}, {cube[1], 1.0}, {cube[2], 1.0}}), 1.0,
                 {{cube[0]}, {cube[1]}, {cube[2]}}});
  out.push_back({"corollary_minus_one", FieldSpec::corollary(dirac(kMinusOne)), 1.0,
                 {{kMinusOne}, {kOne, true}}});
  out.push_back({"corollary_i", FieldSpec::corollary(dirac(kIPoint)), 1.0,
                 {{kMinusOne}, {kOne, true}}});
  out.push_back({"two_segment",
                 FieldSpec::corollary(MeasureSchedule(
                     {{0.0, 1.0, dirac(kMinusOne)}, {1.0, 2.0, dirac(kIPoint)}})),
                 2.0, {{kMinusOne}, {kOne, true}}});
  return out;
}

std::vector<Complex> grid64() {
  const std::vector<double> radii{0.2, 0.45, 0.7, 0.9};
  return polar_grid(radii, 16);
}

std::vector<Complex> grid100() {
  const std::vector<double> radii{0.1, 0.3, 0.5, 0.7, 0.9};
  return polar_grid(radii, 20);
}

double dilation(const PointMap& f, BoundaryPoint sigma) {
  const auto est = angular_derivative(f, sigma, sigma);
  return est.diverged ? std::nan("") : est.value;
}

double flow_dilation(const FieldSpec& f, BoundaryPoint sigma, double s, double t) {
  if (s == t) return 1.0;
  return dilation(evolution_map(f, s, t), sigma);
}

ThreeBrfpMap unit_atom_map(double w = 1.0) {
  return build_three_brfp_map(-1.0, 1.0, RealAtomicMeasure({{0.0, w}}, -1.0, 1.0, true),
                              natural_targets(-1.0, 1.0));
}

// A named map with its boundary fixed points and whether it is an automorphism.
struct AcceptanceMap {
  std::string name;
  PointMap map;
  std::vector<BoundaryPoint> fixed_points;
  bool automorphism = false;
  std::vector<double> exact_dilations;  // known values for automorphisms
};

std::vector<AcceptanceMap> acceptance_maps() {
  std::vector<AcceptanceMap> out;
  for (auto& af : acceptance_fields()) {
    if (af.fixed_points.empty()) continue;
    std::vector<BoundaryPoint> pts;
    for (const auto& fp : af.fixed_points) pts.push_back(fp.point);
    const bool autom = af.name == "corollary_minus_one";
    std::vector<double> exact;
    ToleranceSettings tol;
    if (autom) {
      exact = {std::exp(af.horizon), std::exp(-af.horizon)};
      // Julia equality amplifies map error by 1 / (1 - |w|^2); integrate more tightly.
      tol.rel_tol = 1e-12;
      tol.abs_tol = 1e-14;
    }
    out.push_back({af.name, evolution_map(af.field, 0.0, af.horizon, tol), pts, autom, exact});
  }
  const auto h = build_automorphism(kMinusOne, kOne, std::exp(1.0));
  out.push_back({"automorphism", [h](Complex z) { return h(z); }, {kMinusOne, kOne}, true,
                 {std::exp(1.0), std::exp(-1.0)}});
  const auto hr = build_automorphism(BoundaryPoint(1.5 * kPi), kIPoint, std::exp(2.0));
  out.push_back({"rotated_automorphism", [hr](Complex z) { return hr(z); },
                 {BoundaryPoint(1.5 * kPi), kIPoint}, true,
                 {std::exp(2.0), std::exp(-2.0)}});
  const auto three = unit_atom_map();
  out.push_back({"three_brfp", [three](Complex z) { return three(z); },
                 {three.targets().sigma1, three.targets().sigma2, three.targets().tau}, false});
  return out;
}

Verdict ac1_hyperbolic_oracle() {
  const auto f = FieldSpec::corollary(dirac(kMinusOne));
  const double x = (std::exp(5.0) - 1.0) / (std::exp(5.0) + 1.0);
  double worst = 0.0;
  for (const Complex z : grid64())
    worst = std::max(worst, std::abs(evolve(f, 0.0, 5.0, z) - (z + x) / (1.0 + x * z)));
  return {worst <= 1e-8, "sup error " + fmt(worst)};
}

Verdict ac2_dilation_tracking() {
  const auto fi = FieldSpec::corollary(dirac(kIPoint));
  const auto fm = FieldSpec::corollary(dirac(kMinusOne));
  double worst = 0.0;
  for (double t : {0.25, 0.5, 1.0, 2.0}) {
    worst = std::max(worst, std::abs(flow_dilation(fi, kMinusOne, 0, t) / std::exp(t) - 1.0));
    worst = std::max(worst, std::abs(flow_dilation(fi, kOne, 0, t) - 1.0));
    worst = std::max(worst, std::abs(flow_dilation(fm, kOne, 0, t) / std::exp(-t) - 1.0));
  }
  return {worst <= 1e-3, "max relative error " + fmt(worst)};
}

Verdict ac3_ef_laws() {
  Verdict v;
  double ef2 = 0.0;
  double max_abs = 0.0;
  for (const auto& af : acceptance_fields()) {
    const double T = af.horizon;
    for (const Complex z : grid64()) {
      for (double s : {0.0, 0.25 * T, 0.5 * T, T})
        if (evolve(af.field, s, s, z) != z) {
          v.pass = false;
          v.detail += af.name + " EF1 not exact; ";
        }
      const Complex direct = evolve(af.field, 0.0, T, z);
      for (double u : {0.25 * T, 0.5 * T, 0.75 * T})
        ef2 = std::max(ef2, std::abs(direct - evolve(af.field, u, T, evolve(af.field, 0.0, u, z))));
      for (const auto& s : integrate_trajectory(af.field, 0.0, T, z).samples)
        max_abs = std::max(max_abs, std::abs(s.w));
    }
  }
  v.pass = v.pass && ef2 <= 1e-8 && max_abs < 1.0;
  v.detail += "EF2 residual " + fmt(ef2) + ", max |w| " + fmt(max_abs);
  return v;
}

Verdict ac4_julia() {
  const auto grid = grid100();
  double worst = -1.0;
  double auto_dev = 0.0;
  for (const auto& m : acceptance_maps()) {
    for (std::size_t i = 0; i < m.fixed_points.size(); ++i) {
      const BoundaryPoint p = m.fixed_points[i];
      const double d = dilation(m.map, p);
      if (!std::isfinite(d)) return {false, m.name + ": angular derivative diverged"};
      worst = std::max(worst, check_julia(m.map, p, p, d * (1.0 + 1e-6), grid).max_violation);
      if (m.automorphism) {
        const double exact = m.exact_dilations[i];
        auto_dev = std::max(auto_dev, check_julia(m.map, p, p, exact, grid).max_abs_deviation);
      }
    }
  }
  return {worst <= 1e-8 && auto_dev <= 1e-10,
          "max violation " + fmt(worst) + ", automorphism deviation " + fmt(auto_dev)};
}

Verdict ac5_cowen_pommerenke() {
  Verdict v;
  double min_product = 1e300;
  double auto_dev = 0.0;
  double min_margin = 1e300;
  for (const auto& m : acceptance_maps()) {
    std::vector<double> d;
    for (const BoundaryPoint p : m.fixed_points) d.push_back(dilation(m.map, p));
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = i + 1; j < d.size(); ++j) {
        const double prod = d[i] * d[j];
        min_product = std::min(min_product, prod);
        if (m.automorphism)
          auto_dev = std::max(auto_dev, std::abs(prod - 1.0));
        else
          min_margin = std::min(min_margin, prod - 1.0);
        if (!std::isfinite(prod)) v.pass = false;
      }
  }
  const auto three = unit_atom_map();
  const double p3 = three.dilation_sigma1() * three.dilation_tau();
  v.pass = v.pass && min_product >= 1.0 - 1e-6 && auto_dev <= 1e-6 && min_margin >= 0.01 &&
           p3 - 1.0 >= 0.01;
  v.detail = "min product " + fmt(min_product) + ", automorphism deviation " + fmt(auto_dev) +
             ", min margin " + fmt(min_margin) + ", three-point product " + fmt(p3);
  return v;
}

Verdict ac6_nevanlinna_beta() {
  const std::vector<double> xs{-2, -1, -0.5, 0, 0.5, 1, 2, 3};
  const std::vector<double> ys{0.1, 0.5, 1, 2};
  const auto hp_grid = upper_half_plane_grid(xs, ys);
  double worst_rel = 0.0;
  double max_deriv = 0.0;
  double hp = -1e300;
  for (double w : {0.1, 1.0, 10.0}) {
    const auto map = unit_atom_map(w);
    const double d = dilation([&](Complex z) { return map(z); }, map.targets().tau);
    worst_rel = std::max(worst_rel, std::abs(d * (1.0 + w) - 1.0));
    max_deriv = std::max(max_deriv, d);
    hp = std::max(hp, check_half_plane_julia(map.rep(), hp_grid).max_violation);
  }
  return {worst_rel <= 1e-4 && max_deriv <= 1.0 && hp <= 1e-12,
          "max relative error " + fmt(worst_rel) + ", max f'(tau) " + fmt(max_deriv) +
              ", half-plane violation " + fmt(hp)};
}

Verdict ac7_arc_lemma() {
  const auto f = unit_atom_map();
  const Complex c0 = f(Complex{});
  const auto norm = [c0](Complex w) { return (w - c0) / (1.0 - std::conj(c0) * w); };
  const auto res = check_arc_length([&](double th) { return norm(f.boundary_value(th)); },
                                    [&](Complex z) { return norm(f(z)); }, f.outer_arc());
  const auto h = build_automorphism(kMinusOne, kOne, std::exp(1.0));
  const Complex h0 = h(Complex{});
  const auto hn = [&](Complex w) { return (w - h0) / (1.0 - std::conj(h0) * w); };
  const auto ctl = check_arc_length([&](double th) { return hn(h(std::polar(1.0, th))); },
                                    [&](Complex z) { return hn(h(z)); }, {kPi / 2, 1.5 * kPi});
  const double margin = res.len_image - res.len_arc;
  const double ctl_dev = std::abs(ctl.len_image - ctl.len_arc);
  return {res.applicable && ctl.applicable && margin > 1e-3 && ctl_dev <= 1e-8,
          "len_arc " + fmt(res.len_arc) + ", len_image " + fmt(res.len_image) +
              ", control deviation " + fmt(ctl_dev)};
}

Verdict ac8_oracle() {
  const auto grid = grid64();
  double worst = 0.0;
  for (const auto& af : acceptance_fields())
    for (std::size_t i = 0; i < grid.size(); i += 4)
      worst = std::max(worst, std::abs(evolve(af.field, 0.0, af.horizon, grid[i]) -
                                       rk4_oracle(af.field, 0.0, af.horizon, grid[i], 100000)));
  return {worst <= 1e-8, "max deviation " + fmt(worst)};
}

Verdict ac9_monotonicity() {
  Verdict v;
  double worst_step = 0.0;
  double worst_chain = 0.0;
  for (auto& af : acceptance_fields()) {
    if (af.fixed_points.empty()) continue;
    const double T = 2.0;
    for (const auto& fp : af.fixed_points) {
      std::vector<double> d;
      for (int k = 0; k <= 20; ++k) d.push_back(flow_dilation(af.field, fp.point, 0.0, k * T / 20));
      for (std::size_t k = 0; k + 1 < d.size(); ++k) {
        const double step = (d[k + 1] - d[k]) / d[k];
        worst_step = std::max(worst_step, fp.dw ? step : -step);
        if (!std::isfinite(step)) v.pass = false;
        if (fp.dw && !(d[k + 1] > 0.0 && d[k + 1] <= 1.0 + 1e-6)) {
          v.pass = false;
          v.detail += af.name + " DW dilation " + fmt(d[k + 1]) + " outside (0, 1]; ";
        }
      }
      const double full = flow_dilation(af.field, fp.point, 0.0, 1.0);
      const double split = flow_dilation(af.field, fp.point, 0.0, 0.5) *
                           flow_dilation(af.field, fp.point, 0.5, 1.0);
      worst_chain = std::max(worst_chain, std::abs(full - split) / full);
    }
  }
  v.pass = v.pass && worst_step <= 1e-6 && worst_chain <= 1e-3;
  v.detail += "worst wrong-way step " + fmt(worst_step) + ", chain-rule residual " +
              fmt(worst_chain);
  return v;
}

// CLI helpers.

std::string read_file(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  os << text;
}

int run(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string corollary_config(double weight, const std::string& extra = "") {
  return R"({"field": {"kind": "corollary", "schedule": {"segments": [{"t0": 0, "t1": null,
    "measure": {"atoms": [{"angle": 3.141592653589793, "weight": )" +
         std::to_string(weight) + R"(}], "excluded_angle": 0.0}}]}},
  "integration": {"t0": 0, "t1": 1}, "grid": {"radii": [0.3, 0.6, 0.9], "angles": 16})" + extra +
         "}";
}

Verdict ac10_cli(const std::string& cli, const fs::path& work) {
  Verdict v;
  auto fail = [&](const std::string& why) {
    v.pass = false;
    v.detail += why + "; ";
  };
  fs::create_directories(work);
  const fs::path good = work / "good.json";
  write_file(good, corollary_config(1.0));
  const std::string c = "\"" + cli + "\"";

  const fs::path r1 = work / "r1.json", r2 = work / "r2.json", r3 = work / "r3.json";
  if (run(c + " verify --config " + good.string() + " --report " + r1.string()) != 0)
    fail("verify good config did not exit 0");
  if (run("LOEWNER_THREADS=1 " + c + " verify --config " + good.string() + " --report " +
          r2.string()) != 0)
    fail("second verify did not exit 0");
  const std::string rep1 = read_file(r1);
  if (rep1.empty() || rep1 != read_file(r2)) fail("reports differ across runs");

  // Round trip: the canonical form of the config has the same digest and report.
  nlohmann::json canon_digest;
  try {
    const auto j = nlohmann::json::parse(rep1);
    canon_digest = j.at("config_digest");
    const fs::path canon = work / "canonical.json";
    auto cfg = nlohmann::json::parse(read_file(good));
    cfg["checks"] = nlohmann::json::array();
    for (const auto& chk : j.at("checks")) cfg["checks"].push_back(chk.at("name"));
    write_file(canon, cfg.dump(2));
    run(c + " verify --config " + canon.string() + " --report " + r3.string());
    if (read_file(r3) != rep1) fail("round-tripped config changed the report");
  } catch (const std::exception& e) {
    fail(std::string("report is not valid JSON: ") + e.what());
  }

  const fs::path out = work / "sim";
  fs::remove_all(out);
  fs::create_directories(out);
  if (run(c + " simulate --config " + good.string() + " --out " + out.string()) != 0 ||
      !fs::exists(out / "trajectory_000.csv"))
    fail("simulate did not write trajectories");
  if (run(c + " derivative --config " + good.string() + " --sigma 3.141592653589793 --times 0,1") !=
      0)
    fail("derivative did not exit 0");

  const fs::path neg = work / "negative_control.json";
  write_file(neg, corollary_config(1.5, R"(, "checks": ["julia", "schwarz_pick"],
    "test_hooks": {"skip_measure_validation": true})"));
  const fs::path nr = work / "negative_report.json";
  if (run(c + " verify --config " + neg.string() + " --report " + nr.string()) != 1)
    fail("negative control did not exit 1");
  try {
    for (const auto& chk : nlohmann::json::parse(read_file(nr)).at("checks"))
      if (chk.at("name") == "julia" &&
          (chk.at("pass") != false || !chk.at("max_residual").is_number() ||
           chk.at("max_residual").get<double>() <= 0.0))
        fail("negative control julia residual not positive");
  } catch (const std::exception& e) {
    fail(std::string("negative report unreadable: ") + e.what());
  }

  const fs::path weak = work / "weak.json", broken = work / "broken.json";
  write_file(weak, corollary_config(0.9));
  write_file(broken, "{\"field\": [");
  if (run(c + " verify --config " + weak.string()) != 2) fail("non-probability measure not exit 2");
  if (run(c + " verify --config " + broken.string()) != 2) fail("syntax error not exit 2");

  const fs::path stiff = work / "stiff.json";
  write_file(stiff, R"({"field": {"kind": "berkson_porta", "tau": {"re": 0, "im": 0},
    "p": {"const_re": 1000, "const_im": 0}},
    "integration": {"t0": 0, "t1": 1, "min_step": 0.05}, "checks": ["semigroup"]})");
  const fs::path stiff_report = work / "stiff_report.json";
  if (run(c + " verify --config " + stiff.string() + " --report " + stiff_report.string()) != 3)
    fail("integration failure not exit 3");

  if (v.detail.empty())
    v.detail = "exit codes 0/1/2/3, identical reports, digest " + canon_digest.dump();
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <loewner-cli> <work-dir>\n");
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path work = argv[2];

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"AC1 hyperbolic-group oracle", ac1_hyperbolic_oracle},
      {"AC2 dilation tracking", ac2_dilation_tracking},
      {"AC3 evolution-family laws", ac3_ef_laws},
      {"AC4 Julia inequality", ac4_julia},
      {"AC5 Cowen-Pommerenke", ac5_cowen_pommerenke},
      {"AC6 Nevanlinna beta relation", ac6_nevanlinna_beta},
      {"AC7 arc-length lemma", ac7_arc_lemma},
      {"AC8 oracle agreement", ac8_oracle},
      {"AC9 dilation monotonicity", ac9_monotonicity},
      {"AC10 CLI contract", [&] { return ac10_cli(cli, work); }},
  };

  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
