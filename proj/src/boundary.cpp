#include "loewner/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <memory>

#include "loewner/extrapolation.hpp"

namespace loewner {

namespace {

constexpr double kGrowthLimit = 1.5;
constexpr double kRelativeErrorLimit = 1e-3;
constexpr std::size_t kMinRadii = 4;

struct RadialSamples {
  std::vector<double> offsets;
  std::vector<Complex> values;
};

// Evaluates `quotient(r, map(r sigma))` until the map fails.
template <typename Quotient>
RadialSamples sample_radially(const PointMap& map, BoundaryPoint sigma,
                              std::span<const double> radii, Quotient quotient) {
  validate_radii(radii);
  RadialSamples out;
  for (double r : radii) {
    Complex w;
    try {
      w = map(r * sigma.value());
    } catch (const IntegrationFailure&) {
      break;
    } catch (const PoleError&) {
      break;
    }
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) break;
    out.offsets.push_back(1.0 - r);
    out.values.push_back(quotient(r, w));
  }
  return out;
}

bool divergent(const Extrapolation& ex) {
  const double mag = std::abs(ex.value);
  return !std::isfinite(mag) || ex.growth >= kGrowthLimit ||
         ex.error > kRelativeErrorLimit * mag;
}

}  // namespace

AngularDerivativeEstimate angular_derivative(const PointMap& map, BoundaryPoint sigma,
                                             BoundaryPoint omega,
                                             std::span<const double> radii) {
  AngularDerivativeEstimate est;
  est.sigma = sigma;
  est.omega = omega;
  const Complex s = sigma.value();
  const Complex o = omega.value();
  const RadialSamples samples = sample_radially(
      map, sigma, radii, [&](double r, Complex w) { return (w - o) / ((r - 1.0) * s); });
  for (std::size_t i = 0; i < samples.values.size(); ++i)
    est.raw_quotients.emplace_back(1.0 - samples.offsets[i], samples.values[i]);

  if (samples.values.size() < kMinRadii) {
    est.diverged = true;
    return est;
  }
  const Extrapolation ex = richardson(samples.offsets, samples.values);
  est.quotient = ex.value;
  est.extrapolation_error = ex.error;
  const Complex normalized = std::conj(o) * s * ex.value;
  est.value = normalized.real();
  est.phase_residual = std::abs(normalized) > 0.0
                           ? std::abs(normalized.imag()) / std::abs(normalized)
                           : 0.0;
  est.diverged = divergent(ex) || !(est.value > 0.0);
  if (est.diverged) est.value = 0.0;
  return est;
}

AngularDerivativeEstimate angular_derivative(const PointMap& map, BoundaryPoint sigma,
                                             BoundaryPoint omega) {
  const auto radii = default_radii();
  return angular_derivative(map, sigma, omega, radii);
}

double julia_alpha(const PointMap& map, BoundaryPoint sigma, std::span<const double> radii) {
  const RadialSamples samples = sample_radially(map, sigma, radii, [](double r, Complex w) {
    return Complex{(1.0 - std::abs(w)) / (1.0 - r), 0.0};
  });
  if (samples.values.size() < kMinRadii) return std::numeric_limits<double>::infinity();
  const Extrapolation ex = richardson(samples.offsets, samples.values);
  if (divergent(ex)) return std::numeric_limits<double>::infinity();
  return ex.value.real();
}

double julia_alpha(const PointMap& map, BoundaryPoint sigma) {
  const auto radii = default_radii();
  return julia_alpha(map, sigma, radii);
}

JuliaCheckResult check_julia(const PointMap& map, BoundaryPoint sigma, BoundaryPoint omega,
                             double A, std::span<const Complex> grid) {
  if (!(A > 0.0)) throw DomainError("check_julia: need A > 0");
  JuliaCheckResult res;
  res.sigma = sigma;
  res.omega = omega;
  res.A = A;
  res.max_violation = grid.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
  for (const Complex z : grid) {
    if (!(std::abs(z) < 1.0)) throw DomainError("check_julia: grid point outside the disk");
    const Complex w = map(z);
    const double lhs = std::norm(omega.value() - w) / one_minus_abs2(w);
    const double rhs = std::norm(sigma.value() - z) / one_minus_abs2(z);
    const double v = lhs - A * rhs;
    if (v > res.max_violation) {
      res.max_violation = v;
      res.worst_point = z;
    }
    res.max_abs_deviation = std::max(res.max_abs_deviation, std::abs(v));
  }
  return res;
}

DWEstimate estimate_dw(const PointMap& map, Complex z0, long max_iter, double tol) {
  if (!(std::abs(z0) < 1.0)) throw DomainError("estimate_dw: |z0| must be < 1");
  DWEstimate est;
  Complex z = z0;
  std::deque<double> args;
  for (long n = 1; n <= max_iter; ++n) {
    const Complex next = map(z);
    const double step = std::abs(next - z);
    z = next;
    est.iterations_used = n;
    est.location = z;

    if (step < tol) {
      est.converged = true;
      est.interior = std::abs(z) < 1.0 - 1e-9;
      if (!est.interior) est.location = z / std::abs(z);
      return est;
    }

    args.push_back(std::arg(z));
    if (args.size() > 10) args.pop_front();
    if (std::abs(z) > 1.0 - 1e-6 && args.size() == 10) {
      const BoundaryPoint latest = BoundaryPoint(args.back());
      double drift = 0.0;
      for (double a : args) drift = std::max(drift, latest.distance(BoundaryPoint(a)));
      if (drift < 1e-8) {
        est.converged = true;
        est.interior = false;
        est.location = z / std::abs(z);
        return est;
      }
    }
  }
  return est;
}

std::vector<DilationSample> dilation_curve(const FieldSpec& field, BoundaryPoint sigma,
                                           std::span<const double> t_grid,
                                           const ToleranceSettings& tol) {
  const auto shared = std::make_shared<const FieldSpec>(field);
  std::vector<DilationSample> out;
  out.reserve(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    if (!(t >= 0.0) || (i > 0 && !(t > t_grid[i - 1])))
      throw DomainError("dilation_curve: t_grid must be increasing and non-negative");
    const auto est = angular_derivative(evolution_map(shared, 0.0, t, tol), sigma, sigma);
    out.push_back({t, est.value, est.extrapolation_error, est.diverged});
  }
  return out;
}

ArcLengthResult check_arc_length(const BoundaryMap& boundary, const PointMap& interior,
                                 std::pair<double, double> arc, int samples) {
  const auto [start, end] = arc;
  if (!(end > start) || samples < 2) throw DomainError("check_arc_length: empty arc");
  ArcLengthResult res;
  res.len_arc = end - start;

  const Complex origin = interior(Complex{0.0, 0.0});
  if (std::abs(origin) > 1e-8) {
    res.note = "map does not fix 0";
    return res;
  }

  Complex prev;
  for (int k = 0; k <= samples; ++k) {
    const double theta = start + res.len_arc * static_cast<double>(k) / samples;
    const Complex w = boundary(theta);
    if (!(std::abs(std::abs(w) - 1.0) <= 1e-8)) {
      res.note = "image leaves the unit circle";
      res.len_image = 0.0;
      return res;
    }
    if (k > 0) res.len_image += std::abs(std::arg(w / prev));
    prev = w;
  }
  res.applicable = true;
  res.margin = res.len_image - res.len_arc;
  res.pass = res.len_arc <= res.len_image + 1e-6;
  return res;
}

HalfPlaneJuliaResult check_half_plane_julia(const NevanlinnaRep& rep,
                                            std::span<const Complex> grid) {
  HalfPlaneJuliaResult res;
  res.max_violation = grid.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
  for (const Complex z : grid) {
    if (!(z.imag() > 0.0))
      throw DomainError("check_half_plane_julia: grid point not in the upper half-plane");
    const double v = rep.beta * z.imag() - nevanlinna_eval(rep, z).imag();
    if (v > res.max_violation) {
      res.max_violation = v;
      res.worst_point = z;
    }
  }
  return res;
}

std::vector<Complex> upper_half_plane_grid(std::span<const double> xs,
                                           std::span<const double> ys) {
  std::vector<Complex> out;
  out.reserve(xs.size() * ys.size());
  for (double x : xs)
    for (double y : ys) {
      if (!(y > 0.0)) throw DomainError("upper_half_plane_grid: need y > 0");
      out.emplace_back(x, y);
    }
  return out;
}

}  // namespace loewner
