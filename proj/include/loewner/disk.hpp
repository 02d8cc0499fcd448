#pragma once

#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "loewner/errors.hpp"

namespace loewner {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Maps `z` -> w for points of the unit disk, the upper half-plane, or the sphere.
using PointMap = std::function<Complex(Complex)>;

/// Interior point of the unit disk.
class DiskPoint {
 public:
  explicit DiskPoint(Complex z);
  DiskPoint(double re, double im) : DiskPoint(Complex{re, im}) {}

  double re() const noexcept { return z_.real(); }
  double im() const noexcept { return z_.imag(); }
  Complex value() const noexcept { return z_; }

 private:
  Complex z_;
};

/// Point exp(i*angle) of the unit circle, stored by its angle in [0, 2pi).
///
/// Quarter-turn angles evaluate to exactly 1, i, -1, -i so that fixed points
/// such as sigma = -1 carry no rounding in their imaginary part.
class BoundaryPoint {
 public:
  BoundaryPoint() = default;
  explicit BoundaryPoint(double angle);

  static BoundaryPoint from_complex(Complex z);

  double angle() const noexcept { return angle_; }
  Complex value() const noexcept { return value_; }

  /// Shortest angular distance on the circle.
  double distance(const BoundaryPoint& other) const noexcept;

  friend bool operator==(const BoundaryPoint& a, const BoundaryPoint& b) noexcept {
    return a.angle_ == b.angle_;
  }

 private:
  double angle_ = 0.0;
  Complex value_{1.0, 0.0};
};

/// z -> (az+b)/(cz+d), stored as a 2x2 complex matrix scaled so that the
/// largest coefficient has modulus one.
class MobiusTransform {
 public:
  using Matrix = Eigen::Matrix2cd;

  MobiusTransform();  // identity
  MobiusTransform(Complex a, Complex b, Complex c, Complex d);
  explicit MobiusTransform(const Matrix& m);

  static MobiusTransform identity() { return MobiusTransform(); }

  Complex a() const noexcept { return m_(0, 0); }
  Complex b() const noexcept { return m_(0, 1); }
  Complex c() const noexcept { return m_(1, 0); }
  Complex d() const noexcept { return m_(1, 1); }
  const Matrix& matrix() const noexcept { return m_; }

  Complex determinant() const noexcept { return m_.determinant(); }

  /// Throws PoleError when |cz+d| < 1e-300.
  Complex operator()(Complex z) const;

  /// Image of the point at infinity (a/c); throws PoleError when c == 0.
  Complex at_infinity() const;

  MobiusTransform inverse() const;

  /// Composition: (f * g)(z) == f(g(z)).
  friend MobiusTransform operator*(const MobiusTransform& f, const MobiusTransform& g) {
    return MobiusTransform(Matrix(f.m_ * g.m_));
  }

  /// Marks the transform as a disk automorphism; `maps_circle_to_circle` checks the claim.
  bool flagged_automorphism() const noexcept { return automorphism_; }
  MobiusTransform& flag_automorphism() noexcept {
    automorphism_ = true;
    return *this;
  }

  /// |m(e^{i theta})| = 1 within `tol` at `samples` equally spaced angles.
  bool maps_circle_to_circle(double tol = 1e-12, int samples = 16) const;

 private:
  void normalize();

  Matrix m_;
  bool automorphism_ = false;
};

Complex mobius_apply(const MobiusTransform& m, Complex z);

/// |z1 - z2| / |1 - conj(z2) z1|, for z1, z2 in the open disk.
double pseudo_hyperbolic_distance(Complex z1, Complex z2);

/// H_tau(z) = i(tau+z)/(tau-z): unit disk onto the upper half-plane, tau to infinity.
class CayleyMap {
 public:
  explicit CayleyMap(BoundaryPoint tau) : tau_(tau) {}

  BoundaryPoint tau() const noexcept { return tau_; }

  /// Throws PoleError at z = tau.
  Complex forward(Complex z) const;
  /// Inverse, upper half-plane onto the disk. Throws PoleError at w = -i.
  Complex inverse(Complex w) const;

  MobiusTransform as_mobius() const;

 private:
  BoundaryPoint tau_;
};

Complex cayley(BoundaryPoint tau, Complex z);
Complex cayley_inverse(BoundaryPoint tau, Complex w);

/// Disk automorphism fixing fix1 and fix2 with angular derivative `dilation_at_fix1`
/// at fix1 (and its reciprocal at fix2). Built by conjugating z -> dilation*z on
/// the half-plane where fix1 sits at 0 and fix2 at infinity.
MobiusTransform build_automorphism(BoundaryPoint fix1, BoundaryPoint fix2,
                                   double dilation_at_fix1);

/// Disk automorphism fixing fix1 and fix2 and sending `from` to `to`. The two
/// interior points must lie on the same hypercycle through fix1 and fix2,
/// otherwise ConstraintError is thrown.
MobiusTransform build_automorphism(BoundaryPoint fix1, BoundaryPoint fix2, Complex from,
                                   Complex to);

/// Points r*exp(2 pi i k / angles) for every r in `radii`, k = 0..angles-1.
std::vector<Complex> polar_grid(std::span<const double> radii, int angles);

/// 1 - |z|^2 computed without cancellation for |z| close to 1.
inline double one_minus_abs2(Complex z) {
  const double r = std::abs(z);
  return (1.0 - r) * (1.0 + r);
}

}  // namespace loewner
