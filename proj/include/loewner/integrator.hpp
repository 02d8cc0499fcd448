#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "loewner/generators.hpp"

namespace loewner {

struct ToleranceSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  double min_step = 1e-12;
  /// Stage points with |w| >= 1 - boundary_guard are rejected.
  double boundary_guard = 1e-14;

  /// Throws ValidationError unless 0 < min_step < max_step and tolerances are positive.
  void validate() const;
};

struct TrajectorySample {
  double t = 0.0;
  Complex w;
};

/// Accepted steps of t -> phi_{s,t}(z), starting with (s, z).
struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::uint64_t field_digest = 0;
};

/// Called with every accepted (t, w), including the initial point.
using StepObserver = std::function<void(double, Complex)>;

/// phi_{s,t}(z) for dphi/dt = G(phi, t), phi_{s,s} = z, by an adaptive
/// Dormand-Prince 5(4) pair with PI step control. Steps never cross schedule
/// breakpoints. Throws IntegrationFailure (carrying the last accepted state)
/// when the step size underflows min_step.
Complex evolve(const FieldSpec& field, double s, double t, Complex z,
               const ToleranceSettings& tol = {}, const StepObserver& observer = {});

/// Same integration, recording every accepted step.
Trajectory integrate_trajectory(const FieldSpec& field, double s, double t, Complex z,
                                const ToleranceSettings& tol = {});

/// z -> phi_{s,t}(z). The s == t evaluator is the identity without integration.
class EvolutionEvaluator {
 public:
  EvolutionEvaluator(std::shared_ptr<const FieldSpec> field, double s, double t,
                     ToleranceSettings tol);

  Complex operator()(Complex z) const;

  double s() const noexcept { return s_; }
  double t() const noexcept { return t_; }
  const FieldSpec& field() const noexcept { return *field_; }
  const ToleranceSettings& tolerances() const noexcept { return tol_; }

  operator PointMap() const {  // NOLINT(google-explicit-constructor)
    return [self = *this](Complex z) { return self(z); };
  }

 private:
  std::shared_ptr<const FieldSpec> field_;
  double s_;
  double t_;
  ToleranceSettings tol_;
};

EvolutionEvaluator evolution_map(const FieldSpec& field, double s, double t,
                                 const ToleranceSettings& tol = {});
EvolutionEvaluator evolution_map(std::shared_ptr<const FieldSpec> field, double s, double t,
                                 const ToleranceSettings& tol = {});

/// Classical fixed-step RK4 with `n_steps` uniform steps on [s, t], schedule
/// breakpoints inserted into the grid. Independent oracle for `evolve`.
Complex rk4_oracle(const FieldSpec& field, double s, double t, Complex z, long n_steps);

/// phi_t(z) of the one-parameter semigroup generated by a time-constant field.
Complex autonomous_semiflow(const FieldSpec& generator, double t, Complex z,
                            const ToleranceSettings& tol = {});

}  // namespace loewner
