#include "loewner/disk.hpp"

#include <algorithm>
#include <cmath>

namespace loewner {

DiskPoint::DiskPoint(Complex z) : z_(z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("DiskPoint: |z| must be < 1");
}

BoundaryPoint::BoundaryPoint(double angle) {
  if (!std::isfinite(angle)) throw DomainError("BoundaryPoint: non-finite angle");
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  angle_ = a;

  const double quarter = kPi / 2.0;
  const double k = std::round(a / quarter);
  if (std::abs(a - k * quarter) < 1e-15) {
    switch (static_cast<int>(k) % 4) {
      case 0: value_ = {1.0, 0.0}; break;
      case 1: value_ = {0.0, 1.0}; break;
      case 2: value_ = {-1.0, 0.0}; break;
      default: value_ = {0.0, -1.0}; break;
    }
  } else {
    value_ = {std::cos(a), std::sin(a)};
  }
}

BoundaryPoint BoundaryPoint::from_complex(Complex z) {
  if (z == Complex{}) throw DomainError("BoundaryPoint: zero has no argument");
  return BoundaryPoint(std::arg(z));
}

double BoundaryPoint::distance(const BoundaryPoint& other) const noexcept {
  const double d = std::abs(angle_ - other.angle_);
  return std::min(d, kTwoPi - d);
}

MobiusTransform::MobiusTransform() : m_(Matrix::Identity()) {}

MobiusTransform::MobiusTransform(Complex a, Complex b, Complex c, Complex d) {
  m_ << a, b, c, d;
  normalize();
}

MobiusTransform::MobiusTransform(const Matrix& m) : m_(m) { normalize(); }

void MobiusTransform::normalize() {
  const double scale = m_.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw ValidationError("MobiusTransform: coefficients must be finite and not all zero");
  m_ /= scale;
  if (std::abs(m_.determinant()) < 1e-15)
    throw ValidationError("MobiusTransform: ad - bc = 0 (degenerate transform)");
}

Complex MobiusTransform::operator()(Complex z) const {
  const Complex den = c() * z + d();
  if (std::abs(den) < 1e-300) throw PoleError("MobiusTransform: pole at input");
  return (a() * z + b()) / den;
}

Complex MobiusTransform::at_infinity() const {
  if (std::abs(c()) < 1e-300) throw PoleError("MobiusTransform: infinity is fixed");
  return a() / c();
}

MobiusTransform MobiusTransform::inverse() const {
  MobiusTransform inv(d(), -b(), -c(), a());
  inv.automorphism_ = automorphism_;
  return inv;
}

bool MobiusTransform::maps_circle_to_circle(double tol, int samples) const {
  for (int k = 0; k < samples; ++k) {
    const Complex z = std::polar(1.0, kTwoPi * k / samples);
    const Complex den = c() * z + d();
    if (std::abs(den) < 1e-300) return false;
    if (std::abs(std::abs((a() * z + b()) / den) - 1.0) > tol) return false;
  }
  return true;
}

Complex mobius_apply(const MobiusTransform& m, Complex z) { return m(z); }

double pseudo_hyperbolic_distance(Complex z1, Complex z2) {
  if (!(std::abs(z1) < 1.0) || !(std::abs(z2) < 1.0))
    throw DomainError("pseudo_hyperbolic_distance: points must lie in the open disk");
  return std::abs(z1 - z2) / std::abs(1.0 - std::conj(z2) * z1);
}

Complex CayleyMap::forward(Complex z) const {
  const Complex t = tau_.value();
  const Complex den = t - z;
  if (std::abs(den) < 1e-300) throw PoleError("cayley: z coincides with tau");
  return kI * (t + z) / den;
}

Complex CayleyMap::inverse(Complex w) const {
  const Complex den = w + kI;
  if (std::abs(den) < 1e-300) throw PoleError("cayley inverse: pole at w = -i");
  return tau_.value() * (w - kI) / den;
}

MobiusTransform CayleyMap::as_mobius() const {
  const Complex t = tau_.value();
  return MobiusTransform(kI, kI * t, Complex{-1.0, 0.0}, t);
}

Complex cayley(BoundaryPoint tau, Complex z) { return CayleyMap(tau).forward(z); }

Complex cayley_inverse(BoundaryPoint tau, Complex w) { return CayleyMap(tau).inverse(w); }

namespace {

// z -> (z - fix1)/(z - fix2): fix1 to 0, fix2 to infinity.
MobiusTransform split_fixed_points(BoundaryPoint fix1, BoundaryPoint fix2) {
  if (fix1.distance(fix2) <= 1e-12)
    throw DomainError("build_automorphism: fixed points must be distinct");
  return MobiusTransform(1.0, -fix1.value(), 1.0, -fix2.value());
}

}  // namespace

MobiusTransform build_automorphism(BoundaryPoint fix1, BoundaryPoint fix2,
                                   double dilation_at_fix1) {
  if (!(dilation_at_fix1 > 0.0) || !std::isfinite(dilation_at_fix1))
    throw DomainError("build_automorphism: dilation must be positive");
  const MobiusTransform split = split_fixed_points(fix1, fix2);
  const MobiusTransform scale(dilation_at_fix1, 0.0, 0.0, 1.0);
  MobiusTransform h = split.inverse() * scale * split;
  h.flag_automorphism();
  return h;
}

MobiusTransform build_automorphism(BoundaryPoint fix1, BoundaryPoint fix2, Complex from,
                                   Complex to) {
  if (!(std::abs(from) < 1.0) || !(std::abs(to) < 1.0))
    throw DomainError("build_automorphism: interior pair must lie in the open disk");
  const MobiusTransform split = split_fixed_points(fix1, fix2);
  const Complex ratio = split(to) / split(from);
  if (std::abs(std::arg(ratio)) > 1e-9)
    throw ConstraintError(
        "build_automorphism: interior points are not on a common hypercycle through the "
        "fixed points");
  return build_automorphism(fix1, fix2, std::abs(ratio));
}

std::vector<Complex> polar_grid(std::span<const double> radii, int angles) {
  if (angles < 1) throw DomainError("polar_grid: need at least one angle");
  std::vector<Complex> grid;
  grid.reserve(radii.size() * static_cast<std::size_t>(angles));
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("polar_grid: radii must lie in (0, 1)");
    for (int k = 0; k < angles; ++k) grid.push_back(r * BoundaryPoint(kTwoPi * k / angles).value());
  }
  return grid;
}

}  // namespace loewner
