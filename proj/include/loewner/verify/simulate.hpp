#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "loewner/boundary.hpp"
#include "loewner/verify/config.hpp"

namespace loewner::verify {

struct SimulateResult {
  std::vector<std::string> files;
  /// First failure, when one occurred.
  std::optional<std::string> failure;
};

/// Integrates every grid point over [t0, t1] and writes `t,w_re,w_im` CSVs: one
/// file per point, or a single file with a leading `z_index` column when
/// output.combined is set. `out_dir` overrides output.trajectory_csv.
/// Throws std::runtime_error on I/O problems.
SimulateResult run_simulate(const RunConfig& config, const std::optional<std::string>& out_dir,
                            unsigned threads);

/// phi_{t0,t}'(sigma) for each requested t >= t0.
std::vector<DilationSample> run_derivative(const RunConfig& config, BoundaryPoint sigma,
                                           const std::vector<double>& times);

void write_derivative_csv(std::ostream& os, const std::vector<DilationSample>& rows);

}  // namespace loewner::verify
