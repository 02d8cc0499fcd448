#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loewner/disk.hpp"
#include "loewner/generators.hpp"
#include "loewner/integrator.hpp"

namespace loewner {

/// Radial estimate of phi'(sigma) at a boundary point with phi(sigma) = omega.
struct AngularDerivativeEstimate {
  BoundaryPoint sigma;
  BoundaryPoint omega;
  /// Real part of conj(omega) sigma L, where L is the extrapolated quotient.
  /// Meaningful only when !diverged.
  double value = 0.0;
  /// Extrapolated (phi(r sigma) - omega)/(r sigma - sigma), not normalized.
  Complex quotient;
  std::vector<std::pair<double, Complex>> raw_quotients;
  double extrapolation_error = 0.0;
  /// |Im| / |.| of the normalized quotient; small at a regular contact point.
  double phase_residual = 0.0;
  bool diverged = false;
};

/// Divergence: successive extrapolants grow by 1.5x or more, or differ by more
/// than 1e-3 relative. Radii past an IntegrationFailure are dropped; fewer than
/// four surviving radii also count as divergence.
AngularDerivativeEstimate angular_derivative(const PointMap& map, BoundaryPoint sigma,
                                             BoundaryPoint omega,
                                             std::span<const double> radii);
AngularDerivativeEstimate angular_derivative(const PointMap& map, BoundaryPoint sigma,
                                             BoundaryPoint omega);

/// Extrapolated radial limit of (1 - |phi(r sigma)|)/(1 - r); +infinity when divergent.
double julia_alpha(const PointMap& map, BoundaryPoint sigma, std::span<const double> radii);
double julia_alpha(const PointMap& map, BoundaryPoint sigma);

struct JuliaCheckResult {
  BoundaryPoint sigma;
  BoundaryPoint omega;
  double A = 0.0;
  /// max over the grid of |omega - phi|^2/(1 - |phi|^2) - A |sigma - z|^2/(1 - |z|^2).
  double max_violation = 0.0;
  /// max of the absolute difference; measures equality for automorphisms.
  double max_abs_deviation = 0.0;
  Complex worst_point;
};

JuliaCheckResult check_julia(const PointMap& map, BoundaryPoint sigma, BoundaryPoint omega,
                             double A, std::span<const Complex> grid);

struct DWEstimate {
  Complex location;
  bool interior = false;
  bool converged = false;
  long iterations_used = 0;
};

/// Iterates z -> map(z). Interior when Cauchy-convergent at `tol` with
/// |z| < 1 - 1e-9; boundary when |z_n| > 1 - 1e-6 and arg z_n moves by less than
/// 1e-8 over the last 10 iterates (location is then projected to the circle).
DWEstimate estimate_dw(const PointMap& map, Complex z0, long max_iter = 100000,
                       double tol = 1e-12);

struct DilationSample {
  double t = 0.0;
  double value = 0.0;
  double error = 0.0;
  bool diverged = false;
};

/// phi_{0,t}'(sigma) for each t; sigma must be a boundary fixed point of the field.
std::vector<DilationSample> dilation_curve(const FieldSpec& field, BoundaryPoint sigma,
                                           std::span<const double> t_grid,
                                           const ToleranceSettings& tol = {});

/// theta -> boundary value of the map at exp(i theta).
using BoundaryMap = std::function<Complex(double)>;

struct ArcLengthResult {
  double len_arc = 0.0;
  double len_image = 0.0;
  bool applicable = false;
  bool pass = false;
  /// len_image - len_arc.
  double margin = 0.0;
  std::string note;
};

/// Compares the length of the arc (theta_start, theta_end) with the length of its
/// image, measured by summing unwrapped argument increments of the sampled image.
/// Not applicable when |interior(0)| > 1e-8 or any sampled image is off the
/// circle by more than 1e-8.
ArcLengthResult check_arc_length(const BoundaryMap& boundary, const PointMap& interior,
                                 std::pair<double, double> arc, int samples = 2048);

struct HalfPlaneJuliaResult {
  /// max over the grid of beta Im z - Im Phi(z).
  double max_violation = 0.0;
  Complex worst_point;
};

HalfPlaneJuliaResult check_half_plane_julia(const NevanlinnaRep& rep,
                                            std::span<const Complex> grid);

/// x + iy for every x in `xs`, y in `ys` (all y > 0).
std::vector<Complex> upper_half_plane_grid(std::span<const double> xs,
                                           std::span<const double> ys);

/// 1 - d1 d2; non-positive when the Cowen-Pommerenke bound holds.
inline double cowen_pommerenke_residual(double d1, double d2) { return 1.0 - d1 * d2; }

}  // namespace loewner
