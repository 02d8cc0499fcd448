// Command-line front end: simulate, verify, derivative.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "loewner/verify/config.hpp"
#include "loewner/verify/parallel.hpp"
#include "loewner/verify/report.hpp"
#include "loewner/verify/simulate.hpp"

namespace {

using namespace loewner;
using namespace loewner::verify;

enum Exit { kOk = 0, kCheckFailed = 1, kConfigError = 2, kIntegrationFailed = 3 };

RunConfig load_config(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError(ConfigError::Kind::Semantic, path, "cannot read config file");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::vector<double> parse_times(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double t = std::stod(item, &used);
    if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos)
      throw std::invalid_argument("bad time '" + item + "'");
    out.push_back(t);
  }
  if (out.empty()) throw std::invalid_argument("--times is empty");
  return out;
}

int cmd_simulate(const std::string& config_path, const std::optional<std::string>& out) {
  const RunConfig cfg = load_config(config_path);
  const SimulateResult res = run_simulate(cfg, out, thread_count_from_env());
  for (const auto& f : res.files) std::cout << f << "\n";
  if (res.failure) {
    std::cerr << "integration failure at " << *res.failure;
    return kIntegrationFailed;
  }
  return kOk;
}

int cmd_verify(const std::string& config_path, const std::optional<std::string>& report_path) {
  const RunConfig cfg = load_config(config_path);
  const VerificationReport report = run_verify(cfg, thread_count_from_env());
  const std::string text = emit_report(report);
  const auto target = report_path ? report_path : cfg.output.report_json;
  if (target) {
    std::ofstream os(*target, std::ios::binary | std::ios::trunc);
    os << text;
    if (!os.flush()) throw std::runtime_error("I/O error: cannot write " + *target);
  } else {
    std::cout << text;
  }
  for (const auto& c : report.checks)
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
  if (report.any_integration_failure()) return kIntegrationFailed;
  return report.all_pass() ? kOk : kCheckFailed;
}

int cmd_derivative(const std::string& config_path, double sigma, const std::string& times) {
  const RunConfig cfg = load_config(config_path);
  std::vector<double> ts;
  try {
    ts = parse_times(times);
  } catch (const std::exception& e) {
    std::cerr << "config error: --times: " << e.what() << "\n";
    return kConfigError;
  }
  write_derivative_csv(std::cout, run_derivative(cfg, BoundaryPoint(sigma), ts));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loewner-Kufarev evolution families: simulate, verify, derivative", "loewner"};
  app.require_subcommand(1);

  std::string config;
  std::optional<std::string> out_dir;
  std::optional<std::string> report;
  double sigma = 0.0;
  std::string times;

  auto* sim = app.add_subcommand("simulate", "Integrate the grid and write trajectory CSVs");
  sim->add_option("--config", config, "Run configuration (JSON)")->required();
  sim->add_option("--out", out_dir, "Output directory");

  auto* ver = app.add_subcommand("verify", "Run the configured checks and emit a report");
  ver->add_option("--config", config, "Run configuration (JSON)")->required();
  ver->add_option("--report", report, "Report path (default: output.report_json or stdout)");

  auto* der = app.add_subcommand("derivative", "Angular derivative phi'_{t0,t}(sigma) as CSV");
  der->add_option("--config", config, "Run configuration (JSON)")->required();
  der->add_option("--sigma", sigma, "Boundary point angle in radians")->required();
  der->add_option("--times", times, "Comma-separated times")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*sim) return cmd_simulate(config, out_dir);
    if (*ver) return cmd_verify(config, report);
    return cmd_derivative(config, sigma, times);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IntegrationFailure& e) {
    std::cerr << "integration failure: " << e.what() << "\n";
    return kIntegrationFailed;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}
