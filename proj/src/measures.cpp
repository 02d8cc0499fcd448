#include "loewner/measures.hpp"

#include <cmath>
#include <string>

namespace loewner {

namespace {

constexpr double kPoleTolerance = 1e-15;

void require_positive_weight(double w, const char* who) {
  if (!(w > 0.0) || !std::isfinite(w))
    throw ValidationError(std::string(who) + ": atom weights must be positive and finite");
}

void require_closed_disk(Complex z, const char* who) {
  if (!(std::abs(z) <= 1.0 + 1e-15)) throw DomainError(std::string(who) + ": |z| > 1");
}

}  // namespace

AtomicCircleMeasure::AtomicCircleMeasure(std::vector<CircleAtom> atoms,
                                         std::optional<BoundaryPoint> excluded)
    : atoms_(std::move(atoms)), excluded_(excluded) {
  positions_.reserve(atoms_.size());
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    require_positive_weight(atoms_[j].weight, "AtomicCircleMeasure");
    for (std::size_t k = 0; k < j; ++k) {
      if (atoms_[j].position.distance(atoms_[k].position) <= kAtomAngleTolerance)
        throw ValidationError("AtomicCircleMeasure: atom positions must be pairwise distinct");
    }
    if (excluded_ && atoms_[j].position.distance(*excluded_) <= kAtomAngleTolerance)
      throw ValidationError("AtomicCircleMeasure: atom placed at the excluded point");
    positions_.push_back(atoms_[j].position.value());
    total_ += atoms_[j].weight;
  }
}

AtomicCircleMeasure AtomicCircleMeasure::dirac(BoundaryPoint at, double weight,
                                               std::optional<BoundaryPoint> excluded) {
  return AtomicCircleMeasure({CircleAtom{at, weight}}, excluded);
}

bool AtomicCircleMeasure::is_probability() const noexcept {
  return std::abs(total_ - 1.0) <= kProbabilityTolerance;
}

double AtomicCircleMeasure::mass_at(BoundaryPoint point) const noexcept {
  for (const auto& a : atoms_)
    if (a.position.distance(point) <= kAtomAngleTolerance) return a.weight;
  return 0.0;
}

bool operator==(const AtomicCircleMeasure& x, const AtomicCircleMeasure& y) {
  if (x.atoms_.size() != y.atoms_.size()) return false;
  for (std::size_t j = 0; j < x.atoms_.size(); ++j) {
    if (!(x.atoms_[j].position == y.atoms_[j].position) ||
        x.atoms_[j].weight != y.atoms_[j].weight)
      return false;
  }
  if (x.excluded_.has_value() != y.excluded_.has_value()) return false;
  return !x.excluded_ || *x.excluded_ == *y.excluded_;
}

RealAtomicMeasure::RealAtomicMeasure(std::vector<RealAtom> atoms, double xi1, double xi2,
                                     bool inside)
    : atoms_(std::move(atoms)), xi1_(xi1), xi2_(xi2), inside_(inside) {
  if (!(xi1 < xi2)) throw DomainError("RealAtomicMeasure: need xi1 < xi2");
  for (const auto& a : atoms_) {
    require_positive_weight(a.weight, "RealAtomicMeasure");
    if (!std::isfinite(a.location))
      throw ValidationError("RealAtomicMeasure: atom locations must be finite");
    const bool in_open_window = a.location > xi1 && a.location < xi2;
    const bool outside_closed_window = a.location < xi1 || a.location > xi2;
    if (inside ? !in_open_window : !outside_closed_window)
      throw ValidationError(inside
                                ? "RealAtomicMeasure: atom outside the open window (xi1, xi2)"
                                : "RealAtomicMeasure: atom inside the closed window [xi1, xi2]");
  }
}

double RealAtomicMeasure::total_mass() const noexcept {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight;
  return m;
}

MeasureSchedule::MeasureSchedule(std::vector<ScheduleSegment> segments, bool hold_last)
    : segments_(std::move(segments)), hold_last_(hold_last) {
  if (segments_.empty()) throw ValidationError("MeasureSchedule: no segments");
  if (std::abs(segments_.front().t_start) > 1e-12)
    throw ValidationError("MeasureSchedule: first segment must start at t = 0");
  segments_.front().t_start = 0.0;
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const auto& seg = segments_[k];
    if (!(seg.t_end > seg.t_start))
      throw ValidationError("MeasureSchedule: segment " + std::to_string(k) +
                            " must have t_end > t_start");
    if (std::isinf(seg.t_end) && k + 1 != segments_.size())
      throw ValidationError("MeasureSchedule: only the last segment may be unbounded");
    if (k > 0 && std::abs(seg.t_start - segments_[k - 1].t_end) > 1e-12)
      throw ValidationError("MeasureSchedule: segments " + std::to_string(k - 1) + " and " +
                            std::to_string(k) + " are not contiguous");
  }
  for (std::size_t k = 1; k < segments_.size(); ++k)
    segments_[k].t_start = segments_[k - 1].t_end;
}

MeasureSchedule MeasureSchedule::constant(AtomicCircleMeasure measure) {
  return MeasureSchedule(
      {ScheduleSegment{0.0, std::numeric_limits<double>::infinity(), std::move(measure)}});
}

double MeasureSchedule::end_time() const noexcept {
  return segments_.empty() ? 0.0 : segments_.back().t_end;
}

std::size_t MeasureSchedule::segment_index(double t) const {
  if (t < 0.0 || std::isnan(t)) throw DomainError("MeasureSchedule: negative time");
  for (std::size_t k = 0; k < segments_.size(); ++k)
    if (t < segments_[k].t_end) return k;
  if (hold_last_) return segments_.size() - 1;
  throw DomainError("MeasureSchedule: time " + std::to_string(t) + " past the schedule end");
}

std::vector<double> MeasureSchedule::breakpoints_in(double s, double t) const {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < segments_.size(); ++k) {
    const double b = segments_[k].t_end;
    if (b > s && b < t) out.push_back(b);
  }
  return out;
}

NevanlinnaRep::NevanlinnaRep(double alpha_, double beta_, RealAtomicMeasure measure_)
    : alpha(alpha_), beta(beta_), measure(std::move(measure_)) {
  if (!std::isfinite(alpha) || !(beta >= 0.0) || !std::isfinite(beta))
    throw ValidationError("NevanlinnaRep: need finite alpha and beta >= 0");
}

Complex herglotz_eval(const AtomicCircleMeasure& mu, double imag_const, Complex z) {
  require_closed_disk(z, "herglotz_eval");
  for (const Complex s : mu.positions())
    if (std::abs(s - z) <= kPoleTolerance) throw PoleError("herglotz_eval: z is an atom");
  return detail::herglotz_sum(mu.positions(), mu.atoms(), z) + Complex{0.0, imag_const};
}

void validate_corollary_measure(const AtomicCircleMeasure& nu) {
  if (!nu.is_probability())
    throw ValidationError("probability mass != 1 (total " + std::to_string(nu.total_mass()) +
                          ")");
  if (!nu.excluded() || nu.excluded()->distance(BoundaryPoint(0.0)) > kAtomAngleTolerance)
    throw ValidationError("measure must declare the excluded point at angle 0");
  if (nu.mass_at(BoundaryPoint(0.0)) > 0.0)
    throw ValidationError("atom at kappa = 1 is not allowed");
}

Complex corollary_q_eval(const AtomicCircleMeasure& nu, Complex z) {
  validate_corollary_measure(nu);
  require_closed_disk(z, "corollary_q_eval");
  for (const Complex k : nu.positions())
    if (std::abs(1.0 + k * z) <= kPoleTolerance) throw PoleError("corollary_q_eval: pole");
  return detail::corollary_sum(nu.positions(), nu.atoms(), z);
}

Complex nevanlinna_eval(const NevanlinnaRep& rep, Complex z) {
  Complex acc = rep.alpha + rep.beta * z;
  for (const auto& a : rep.measure.atoms()) {
    const Complex den = a.location - z;
    if (std::abs(den) <= kPoleTolerance) throw PoleError("nevanlinna_eval: z is an atom");
    acc += a.weight * (1.0 + a.location * z) / den;
  }
  return acc;
}

Complex nevanlinna_derivative(const NevanlinnaRep& rep, Complex z) {
  Complex acc = rep.beta;
  for (const auto& a : rep.measure.atoms()) {
    const Complex den = a.location - z;
    if (std::abs(den) <= kPoleTolerance) throw PoleError("nevanlinna_derivative: z is an atom");
    acc += a.weight * (1.0 + a.location * a.location) / (den * den);
  }
  return acc;
}

const AtomicCircleMeasure& measure_at(const MeasureSchedule& schedule, double t) {
  return schedule.segments()[schedule.segment_index(t)].measure;
}

}  // namespace loewner
