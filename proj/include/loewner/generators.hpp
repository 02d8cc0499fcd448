#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "loewner/disk.hpp"
#include "loewner/extrapolation.hpp"
#include "loewner/measures.hpp"

namespace loewner {

// Herglotz function p in the Berkson-Porta factorization G = (tau - z)(1 - conj(tau) z) p.
struct ConstantHerglotz {
  Complex value;
};
struct MeasureHerglotz {
  AtomicCircleMeasure measure;
  double imag_const = 0.0;
};
struct ScheduledHerglotz {
  MeasureSchedule schedule;
  double imag_const = 0.0;
};
using HerglotzData = std::variant<ConstantHerglotz, MeasureHerglotz, ScheduledHerglotz>;

struct BerksonPortaField {
  Complex tau;
  HerglotzData p;
};

struct ReciprocalTerm {
  BoundaryPoint sigma;
  double alpha = 0.0;
};

/// G = (tau - z)(1 - conj(tau) z) / p(z) with p(z) = sum_j alpha_j (sigma_j + z)/(sigma_j - z).
/// Every sigma_j is a boundary null point of G.
struct ReciprocalField {
  Complex tau;
  AtomicCircleMeasure terms;  // atoms (sigma_j, alpha_j)
};

/// G(z, t) = 1/4 (1 - z)^2 (1 + z) q(z, t),  q(z, t) = int (1 - k)/(1 + k z) dnu_t(k).
struct CorollaryField {
  MeasureSchedule schedule;
};

enum class FieldKind { BerksonPorta, Reciprocal, Corollary };

/// A generator with its time dependence frozen on one schedule segment.
/// Borrowed view: the owning FieldSpec must outlive it.
class FrozenField {
 public:
  Complex operator()(Complex z) const noexcept;
  /// p such that G = (tau - z)(1 - conj(tau) z) p.
  Complex berkson_porta_p(Complex z) const noexcept;

 private:
  friend class FieldSpec;

  FieldKind kind_ = FieldKind::BerksonPorta;
  Complex tau_;
  Complex constant_p_;
  double imag_const_ = 0.0;
  const AtomicCircleMeasure* measure_ = nullptr;
};

/// Time-dependent infinitesimal generator (Herglotz vector field) in one of
/// three closed families. Immutable after construction.
class FieldSpec {
 public:
  using Variant = std::variant<BerksonPortaField, ReciprocalField, CorollaryField>;

  /// G = (tau - z)(1 - conj(tau) z) c with Re c > 0. With tau = 0, c = 1 this is G(z) = -z.
  static FieldSpec berkson_porta(Complex tau, Complex constant_p);
  static FieldSpec berkson_porta(Complex tau, AtomicCircleMeasure mu, double imag_const = 0.0);
  static FieldSpec berkson_porta(Complex tau, MeasureSchedule schedule, double imag_const = 0.0);
  static FieldSpec reciprocal(Complex tau, std::vector<ReciprocalTerm> data);
  static FieldSpec corollary(MeasureSchedule schedule);
  /// Time-constant nu.
  static FieldSpec corollary(AtomicCircleMeasure nu);
  /// Skips the probability-measure validation. Only for negative-control tests.
  static FieldSpec corollary_unchecked(MeasureSchedule schedule);

  const Variant& data() const noexcept { return data_; }
  FieldKind kind() const noexcept { return static_cast<FieldKind>(data_.index()); }

  /// Berkson-Porta point (closed disk). Corollary fields have tau = 1.
  Complex tau() const noexcept;

  bool is_autonomous() const noexcept;
  const MeasureSchedule* schedule() const noexcept;
  /// Times in (s, t) where the field may jump.
  std::vector<double> breakpoints_in(double s, double t) const;

  /// Throws DomainError when t lies outside the schedule.
  FrozenField frozen_at(double t) const;

  /// field_eval; |z| < 1 required.
  Complex operator()(Complex z, double t) const;

  /// FNV-1a hash over the numeric content (stable across runs and platforms).
  std::uint64_t digest() const;

 private:
  explicit FieldSpec(Variant v) : data_(std::move(v)) {}
  Variant data_;
};

Complex field_eval(const FieldSpec& spec, Complex z, double t);

/// Radial limit lambda_sigma(t) of G(z, t)/(z - sigma).
struct NullQuotient {
  BoundaryPoint sigma;
  Complex value;
  double t = 0.0;
  double error = 0.0;
  bool diverged = false;
  std::vector<std::pair<double, Complex>> raw;
};

NullQuotient null_quotient(const FieldSpec& spec, BoundaryPoint sigma, double t,
                           std::span<const double> radii);
NullQuotient null_quotient(const FieldSpec& spec, BoundaryPoint sigma, double t);

struct ThreeBrfpTargets {
  BoundaryPoint sigma1;
  BoundaryPoint sigma2;
  BoundaryPoint tau;
};

/// Targets matched to H_1: sigma_j = H_1^{-1}(xi_j), tau = 1.
ThreeBrfpTargets natural_targets(double xi1, double xi2);

/// Univalent self-map f = M o Phi o M^{-1} of the disk with boundary regular fixed
/// points sigma1, sigma2, tau, where Phi is a Nevanlinna function fixing xi1, xi2 and
/// M = H_tau^{-1} o align sends xi1 -> sigma1, xi2 -> sigma2, infinity -> tau.
class ThreeBrfpMap {
 public:
  const NevanlinnaRep& rep() const noexcept { return rep_; }
  double xi1() const noexcept { return xi1_; }
  double xi2() const noexcept { return xi2_; }
  const ThreeBrfpTargets& targets() const noexcept { return targets_; }
  const CayleyMap& cayley() const noexcept { return cayley_; }
  /// Real affine map of the upper half-plane with align(xi_j) = H_tau(sigma_j).
  const MobiusTransform& align() const noexcept { return align_; }

  /// Interior evaluation.
  Complex operator()(Complex z) const;
  /// Boundary extension at exp(i theta); valid on the arc between sigma2 and sigma1
  /// that contains tau (the image of R \ [xi1, xi2]).
  Complex boundary_value(double theta) const;

  /// Exact angular derivatives: Phi'(xi1), Phi'(xi2) and 1/beta.
  double dilation_sigma1() const;
  double dilation_sigma2() const;
  double dilation_tau() const noexcept { return 1.0 / rep_.beta; }

  /// Counter-clockwise arc (start, end) from sigma2 to sigma1 through tau; end > start.
  std::pair<double, double> outer_arc() const noexcept;

 private:
  friend ThreeBrfpMap build_three_brfp_map(double, double, RealAtomicMeasure,
                                           ThreeBrfpTargets);
  ThreeBrfpMap(NevanlinnaRep rep, double xi1, double xi2, ThreeBrfpTargets targets,
               CayleyMap cayley, MobiusTransform align);

  NevanlinnaRep rep_;
  double xi1_;
  double xi2_;
  ThreeBrfpTargets targets_;
  CayleyMap cayley_;
  MobiusTransform align_;
  MobiusTransform to_disk_;    // H_tau^{-1} o align
  MobiusTransform from_disk_;  // inverse
};

/// Solves Phi(xi1) = xi1, Phi(xi2) = xi2 for (alpha, beta) and assembles the disk map.
/// Throws DomainError when xi1 >= xi2, InfeasibleError when beta <= 0, ConstraintError
/// when the targets are not in counter-clockwise order sigma1, sigma2, tau.
ThreeBrfpMap build_three_brfp_map(double xi1, double xi2, RealAtomicMeasure measure,
                                  ThreeBrfpTargets targets);

Complex three_brfp_map_eval(const ThreeBrfpMap& map, Complex z);

}  // namespace loewner
