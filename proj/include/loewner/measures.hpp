#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "loewner/disk.hpp"

namespace loewner {

/// Angles closer than this are treated as the same point of the circle.
inline constexpr double kAtomAngleTolerance = 1e-12;
/// Allowed deviation of the total mass from 1 for probability measures.
inline constexpr double kProbabilityTolerance = 1e-12;

struct CircleAtom {
  BoundaryPoint position;
  double weight = 0.0;
};

/// Finite positive combination of Dirac masses on the unit circle.
class AtomicCircleMeasure {
 public:
  AtomicCircleMeasure() = default;
  explicit AtomicCircleMeasure(std::vector<CircleAtom> atoms,
                               std::optional<BoundaryPoint> excluded = std::nullopt);

  static AtomicCircleMeasure dirac(BoundaryPoint at, double weight = 1.0,
                                   std::optional<BoundaryPoint> excluded = std::nullopt);

  const std::vector<CircleAtom>& atoms() const noexcept { return atoms_; }
  const std::optional<BoundaryPoint>& excluded() const noexcept { return excluded_; }
  bool empty() const noexcept { return atoms_.empty(); }

  double total_mass() const noexcept { return total_; }
  bool is_probability() const noexcept;
  /// Mass carried by the atom at `point` (zero when there is none).
  double mass_at(BoundaryPoint point) const noexcept;

  /// Atom positions as complex numbers, in atom order.
  const std::vector<Complex>& positions() const noexcept { return positions_; }

  friend bool operator==(const AtomicCircleMeasure&, const AtomicCircleMeasure&);

 private:
  std::vector<CircleAtom> atoms_;
  std::optional<BoundaryPoint> excluded_;
  std::vector<Complex> positions_;
  double total_ = 0.0;
};

struct RealAtom {
  double location = 0.0;
  double weight = 0.0;
};

/// Atomic positive measure on the real line, supported either strictly inside
/// the window (xi1, xi2) or in R \ [xi1, xi2].
class RealAtomicMeasure {
 public:
  RealAtomicMeasure() = default;
  RealAtomicMeasure(std::vector<RealAtom> atoms, double xi1, double xi2, bool inside);

  const std::vector<RealAtom>& atoms() const noexcept { return atoms_; }
  double xi1() const noexcept { return xi1_; }
  double xi2() const noexcept { return xi2_; }
  bool inside() const noexcept { return inside_; }
  double total_mass() const noexcept;

 private:
  std::vector<RealAtom> atoms_;
  double xi1_ = -1.0;
  double xi2_ = 1.0;
  bool inside_ = true;
};

struct ScheduleSegment {
  double t_start = 0.0;
  double t_end = 0.0;  // may be +infinity for the last segment
  AtomicCircleMeasure measure;
};

/// Piecewise-constant-in-time measure t -> nu_t. Segments are half-open
/// [t_start, t_end), contiguous, and start at t = 0.
class MeasureSchedule {
 public:
  MeasureSchedule() = default;
  explicit MeasureSchedule(std::vector<ScheduleSegment> segments, bool hold_last = false);

  /// Single segment [0, +inf).
  static MeasureSchedule constant(AtomicCircleMeasure measure);

  const std::vector<ScheduleSegment>& segments() const noexcept { return segments_; }
  bool hold_last() const noexcept { return hold_last_; }
  double end_time() const noexcept;

  /// Index of the segment that governs time t (right-closed convention at breakpoints).
  std::size_t segment_index(double t) const;

  /// Interior breakpoints strictly inside (s, t).
  std::vector<double> breakpoints_in(double s, double t) const;

 private:
  std::vector<ScheduleSegment> segments_;
  bool hold_last_ = false;
};

/// Nevanlinna data Phi(z) = alpha + beta z + sum_k w_k (1 + t_k z)/(t_k - z).
struct NevanlinnaRep {
  double alpha = 0.0;
  double beta = 1.0;
  RealAtomicMeasure measure;

  NevanlinnaRep() = default;
  NevanlinnaRep(double alpha, double beta, RealAtomicMeasure measure);
};

/// sum_j w_j (sigma_j + z)/(sigma_j - z) + i * imag_const.
Complex herglotz_eval(const AtomicCircleMeasure& mu, double imag_const, Complex z);

/// sum_j w_j (1 - kappa_j)/(1 + kappa_j z); nu must be a probability measure on
/// the circle minus {1}.
Complex corollary_q_eval(const AtomicCircleMeasure& nu, Complex z);

/// Throws ValidationError unless nu is a probability measure that excludes angle 0.
void validate_corollary_measure(const AtomicCircleMeasure& nu);

Complex nevanlinna_eval(const NevanlinnaRep& rep, Complex z);
/// Phi'(z) = beta + sum_k w_k (1 + t_k^2)/(t_k - z)^2.
Complex nevanlinna_derivative(const NevanlinnaRep& rep, Complex z);

const AtomicCircleMeasure& measure_at(const MeasureSchedule& schedule, double t);

namespace detail {

// Unchecked kernels shared with the field evaluators.
inline Complex herglotz_sum(const std::vector<Complex>& positions,
                            const std::vector<CircleAtom>& atoms, Complex z) {
  Complex acc{};
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    const Complex s = positions[j];
    acc += atoms[j].weight * (s + z) / (s - z);
  }
  return acc;
}

inline Complex corollary_sum(const std::vector<Complex>& positions,
                             const std::vector<CircleAtom>& atoms, Complex z) {
  Complex acc{};
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    const Complex k = positions[j];
    acc += atoms[j].weight * (1.0 - k) / (1.0 + k * z);
  }
  return acc;
}

}  // namespace detail

}  // namespace loewner
