#include "loewner/verify/simulate.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "loewner/verify/parallel.hpp"

namespace loewner::verify {

namespace {

std::string row(double t, Complex w) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t, w.real(), w.imag());
  return buf;
}

std::string failure_row(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "# FAILED t=%.17g\n", t);
  return buf;
}

struct PointRun {
  std::vector<std::string> rows;
  std::optional<std::string> failure;
};

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("I/O error: cannot open " + path.string());
  os << text;
  os.flush();
  if (!os) throw std::runtime_error("I/O error: cannot write " + path.string());
}

}  // namespace

SimulateResult run_simulate(const RunConfig& config, const std::optional<std::string>& out_dir,
                            unsigned threads) {
  namespace fs = std::filesystem;
  fs::path base;
  if (out_dir) {
    fs::create_directories(*out_dir);
    base = fs::path(*out_dir) / "trajectory.csv";
  } else if (config.output.trajectory_csv) {
    base = *config.output.trajectory_csv;
  } else {
    throw ConfigError(ConfigError::Kind::Semantic, "/output/trajectory_csv",
                      "required by simulate unless --out is given");
  }

  const auto grid = config.grid.points();
  std::vector<PointRun> runs(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    PointRun& run = runs[i];
    try {
      evolve(*config.field, config.integration.t0, config.integration.t1, grid[i],
             config.integration.tol,
             [&](double t, Complex w) { run.rows.push_back(row(t, w)); });
    } catch (const IntegrationFailure& e) {
      run.failure = failure_row(e.t());
    }
  });

  SimulateResult result;
  auto note_failure = [&](std::size_t i) {
    if (runs[i].failure && !result.failure)
      result.failure = "grid point " + std::to_string(i) + ": " + *runs[i].failure;
  };

  if (config.output.combined) {
    std::string text = "z_index,t,w_re,w_im\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
      for (const auto& r : runs[i].rows) text += std::to_string(i) + "," + r;
      if (runs[i].failure) text += *runs[i].failure;
      note_failure(i);
    }
    write_file(base, text);
    result.files.push_back(base.string());
    return result;
  }

  for (std::size_t i = 0; i < runs.size(); ++i) {
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "_%03zu", i);
    fs::path path = base.parent_path() /
                    (base.stem().string() + suffix + base.extension().string());
    std::string text = "t,w_re,w_im\n";
    for (const auto& r : runs[i].rows) text += r;
    if (runs[i].failure) text += *runs[i].failure;
    write_file(path, text);
    result.files.push_back(path.string());
    note_failure(i);
  }
  return result;
}

std::vector<DilationSample> run_derivative(const RunConfig& config, BoundaryPoint sigma,
                                           const std::vector<double>& times) {
  const double t0 = config.integration.t0;
  std::vector<DilationSample> out;
  for (double t : times) {
    if (!(t >= t0)) throw DomainError("derivative: every time must be >= t0");
    if (t == t0) {
      out.push_back({t, 1.0, 0.0, false});
      continue;
    }
    const auto m = evolution_map(config.field, t0, t, config.integration.tol);
    const auto est = angular_derivative(m, sigma, sigma);
    out.push_back({t, est.value, est.extrapolation_error, est.diverged});
  }
  return out;
}

void write_derivative_csv(std::ostream& os, const std::vector<DilationSample>& rows) {
  os << "t,dilation,error,diverged\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d\n", r.t, r.value, r.error,
                  r.diverged ? 1 : 0);
    os << buf;
  }
}

}  // namespace loewner::verify
