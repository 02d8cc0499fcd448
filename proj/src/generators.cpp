#include "loewner/generators.hpp"

#include <bit>
#include <cmath>

#include <Eigen/Dense>

namespace loewner {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Complex validated_tau(Complex tau) {
  const double r = std::abs(tau);
  if (!std::isfinite(r) || r > 1.0 + 1e-12)
    throw ValidationError("Berkson-Porta point tau must lie in the closed unit disk");
  if (r > 1.0 - 1e-12) return tau / r;
  return tau;
}

void require_tau_off_atoms(Complex tau, const AtomicCircleMeasure& mu) {
  for (const Complex s : mu.positions())
    if (std::abs(s - tau) <= 1e-12)
      throw ValidationError("tau must differ from every boundary point of the Herglotz data");
}

class Fnv1a {
 public:
  void add(double x) {
    if (x == 0.0) x = 0.0;  // fold -0
    add_bytes(std::bit_cast<std::uint64_t>(x));
  }
  void add(Complex z) {
    add(z.real());
    add(z.imag());
  }
  void add_bytes(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      hash_ ^= (v >> (8 * i)) & 0xffu;
      hash_ *= 0x100000001b3ull;
    }
  }
  void add(const AtomicCircleMeasure& m) {
    add_bytes(m.atoms().size());
    for (const auto& a : m.atoms()) {
      add(a.position.angle());
      add(a.weight);
    }
    add(m.excluded() ? m.excluded()->angle() : -1.0);
  }
  void add(const MeasureSchedule& s) {
    add_bytes(s.segments().size());
    add_bytes(s.hold_last() ? 1 : 0);
    for (const auto& seg : s.segments()) {
      add(seg.t_start);
      add(seg.t_end);
      add(seg.measure);
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

}  // namespace

Complex FrozenField::operator()(Complex z) const noexcept {
  switch (kind_) {
    case FieldKind::Corollary: {
      const Complex q = detail::corollary_sum(measure_->positions(), measure_->atoms(), z);
      const Complex one_minus = 1.0 - z;
      return 0.25 * one_minus * one_minus * (1.0 + z) * q;
    }
    case FieldKind::Reciprocal: {
      const Complex p = detail::herglotz_sum(measure_->positions(), measure_->atoms(), z);
      return (tau_ - z) * (1.0 - std::conj(tau_) * z) / p;
    }
    case FieldKind::BerksonPorta:
    default:
      return (tau_ - z) * (1.0 - std::conj(tau_) * z) * berkson_porta_p(z);
  }
}

Complex FrozenField::berkson_porta_p(Complex z) const noexcept {
  switch (kind_) {
    case FieldKind::Corollary:
      return 0.25 * (1.0 + z) *
             detail::corollary_sum(measure_->positions(), measure_->atoms(), z);
    case FieldKind::Reciprocal:
      return 1.0 / detail::herglotz_sum(measure_->positions(), measure_->atoms(), z);
    case FieldKind::BerksonPorta:
    default:
      if (measure_ == nullptr) return constant_p_;
      return detail::herglotz_sum(measure_->positions(), measure_->atoms(), z) +
             Complex{0.0, imag_const_};
  }
}

FieldSpec FieldSpec::berkson_porta(Complex tau, Complex constant_p) {
  if (!(constant_p.real() > 0.0) || !std::isfinite(std::abs(constant_p)))
    throw ValidationError("constant Herglotz function must have positive real part");
  return FieldSpec(BerksonPortaField{validated_tau(tau), ConstantHerglotz{constant_p}});
}

FieldSpec FieldSpec::berkson_porta(Complex tau, AtomicCircleMeasure mu, double imag_const) {
  if (mu.empty()) throw ValidationError("Herglotz measure must have at least one atom");
  tau = validated_tau(tau);
  require_tau_off_atoms(tau, mu);
  return FieldSpec(BerksonPortaField{tau, MeasureHerglotz{std::move(mu), imag_const}});
}

FieldSpec FieldSpec::berkson_porta(Complex tau, MeasureSchedule schedule, double imag_const) {
  tau = validated_tau(tau);
  for (const auto& seg : schedule.segments()) {
    if (seg.measure.empty()) throw ValidationError("Herglotz measure must have at least one atom");
    require_tau_off_atoms(tau, seg.measure);
  }
  return FieldSpec(BerksonPortaField{tau, ScheduledHerglotz{std::move(schedule), imag_const}});
}

FieldSpec FieldSpec::reciprocal(Complex tau, std::vector<ReciprocalTerm> data) {
  if (data.empty()) throw ValidationError("reciprocal field needs at least one boundary point");
  std::vector<CircleAtom> atoms;
  atoms.reserve(data.size());
  for (const auto& d : data) {
    if (!(d.alpha > 0.0)) throw ValidationError("reciprocal field coefficients must be positive");
    atoms.push_back({d.sigma, d.alpha});
  }
  AtomicCircleMeasure terms(std::move(atoms));
  tau = validated_tau(tau);
  require_tau_off_atoms(tau, terms);
  return FieldSpec(ReciprocalField{tau, std::move(terms)});
}

FieldSpec FieldSpec::corollary(MeasureSchedule schedule) {
  for (const auto& seg : schedule.segments()) validate_corollary_measure(seg.measure);
  return FieldSpec(CorollaryField{std::move(schedule)});
}

FieldSpec FieldSpec::corollary(AtomicCircleMeasure nu) {
  return corollary(MeasureSchedule::constant(std::move(nu)));
}

FieldSpec FieldSpec::corollary_unchecked(MeasureSchedule schedule) {
  return FieldSpec(CorollaryField{std::move(schedule)});
}

Complex FieldSpec::tau() const noexcept {
  return std::visit(overloaded{[](const BerksonPortaField& f) { return f.tau; },
                               [](const ReciprocalField& f) { return f.tau; },
                               [](const CorollaryField&) { return Complex{1.0, 0.0}; }},
                    data_);
}

const MeasureSchedule* FieldSpec::schedule() const noexcept {
  if (const auto* c = std::get_if<CorollaryField>(&data_)) return &c->schedule;
  if (const auto* bp = std::get_if<BerksonPortaField>(&data_))
    if (const auto* s = std::get_if<ScheduledHerglotz>(&bp->p)) return &s->schedule;
  return nullptr;
}

bool FieldSpec::is_autonomous() const noexcept {
  const auto* s = schedule();
  return s == nullptr || s->segments().size() == 1;
}

std::vector<double> FieldSpec::breakpoints_in(double s, double t) const {
  const auto* sched = schedule();
  return sched ? sched->breakpoints_in(s, t) : std::vector<double>{};
}

FrozenField FieldSpec::frozen_at(double t) const {
  if (t < 0.0 || std::isnan(t)) throw DomainError("field evaluated at negative time");
  FrozenField f;
  f.kind_ = kind();
  f.tau_ = tau();
  std::visit(overloaded{[&](const BerksonPortaField& bp) {
                          std::visit(overloaded{[&](const ConstantHerglotz& c) {
                                                  f.constant_p_ = c.value;
                                                },
                                                [&](const MeasureHerglotz& m) {
                                                  f.measure_ = &m.measure;
                                                  f.imag_const_ = m.imag_const;
                                                },
                                                [&](const ScheduledHerglotz& s) {
                                                  f.measure_ = &measure_at(s.schedule, t);
                                                  f.imag_const_ = s.imag_const;
                                                }},
                                     bp.p);
                        },
                        [&](const ReciprocalField& r) { f.measure_ = &r.terms; },
                        [&](const CorollaryField& c) { f.measure_ = &measure_at(c.schedule, t); }},
             data_);
  return f;
}

Complex FieldSpec::operator()(Complex z, double t) const {
  if (!(std::abs(z) < 1.0)) throw DomainError("field_eval: |z| must be < 1");
  return frozen_at(t)(z);
}

std::uint64_t FieldSpec::digest() const {
  Fnv1a h;
  h.add_bytes(data_.index());
  h.add(tau());
  std::visit(overloaded{[&](const BerksonPortaField& bp) {
                          h.add_bytes(bp.p.index());
                          std::visit(overloaded{[&](const ConstantHerglotz& c) { h.add(c.value); },
                                                [&](const MeasureHerglotz& m) {
                                                  h.add(m.measure);
                                                  h.add(m.imag_const);
                                                },
                                                [&](const ScheduledHerglotz& s) {
                                                  h.add(s.schedule);
                                                  h.add(s.imag_const);
                                                }},
                                     bp.p);
                        },
                        [&](const ReciprocalField& r) { h.add(r.terms); },
                        [&](const CorollaryField& c) { h.add(c.schedule); }},
             data_);
  return h.value();
}

Complex field_eval(const FieldSpec& spec, Complex z, double t) { return spec(z, t); }

NullQuotient null_quotient(const FieldSpec& spec, BoundaryPoint sigma, double t,
                           std::span<const double> radii) {
  validate_radii(radii);
  const FrozenField g = spec.frozen_at(t);
  const Complex s = sigma.value();

  NullQuotient out;
  out.sigma = sigma;
  out.t = t;
  std::vector<double> offsets;
  std::vector<Complex> q;
  for (double r : radii) {
    const Complex z = r * s;
    const Complex value = g(z) / (z - s);
    out.raw.emplace_back(r, value);
    offsets.push_back(1.0 - r);
    q.push_back(value);
  }
  const Extrapolation ex = richardson(offsets, q);
  out.value = ex.value;
  out.error = ex.error;
  out.diverged = !std::isfinite(std::abs(ex.value)) || ex.error > 1e-6 * (1.0 + std::abs(ex.value));
  return out;
}

NullQuotient null_quotient(const FieldSpec& spec, BoundaryPoint sigma, double t) {
  const auto radii = default_radii();
  return null_quotient(spec, sigma, t, radii);
}

ThreeBrfpTargets natural_targets(double xi1, double xi2) {
  const BoundaryPoint one(0.0);
  return {BoundaryPoint::from_complex(cayley_inverse(one, xi1)),
          BoundaryPoint::from_complex(cayley_inverse(one, xi2)), one};
}

ThreeBrfpMap::ThreeBrfpMap(NevanlinnaRep rep, double xi1, double xi2, ThreeBrfpTargets targets,
                           CayleyMap cayley, MobiusTransform align)
    : rep_(std::move(rep)),
      xi1_(xi1),
      xi2_(xi2),
      targets_(targets),
      cayley_(cayley),
      align_(align),
      to_disk_(cayley.as_mobius().inverse() * align),
      from_disk_(to_disk_.inverse()) {}

Complex ThreeBrfpMap::operator()(Complex z) const {
  if (!(std::abs(z) < 1.0)) throw DomainError("three_brfp_map_eval: |z| must be < 1");
  return to_disk_(nevanlinna_eval(rep_, from_disk_(z)));
}

Complex ThreeBrfpMap::boundary_value(double theta) const {
  const BoundaryPoint p(theta);
  if (p.distance(targets_.tau) <= 1e-15) return targets_.tau.value();
  const double x = from_disk_(p.value()).real();
  return to_disk_(nevanlinna_eval(rep_, Complex{x, 0.0}));
}

double ThreeBrfpMap::dilation_sigma1() const { return nevanlinna_derivative(rep_, xi1_).real(); }
double ThreeBrfpMap::dilation_sigma2() const { return nevanlinna_derivative(rep_, xi2_).real(); }

std::pair<double, double> ThreeBrfpMap::outer_arc() const noexcept {
  const double start = targets_.sigma2.angle();
  double end = targets_.sigma1.angle();
  while (end <= start) end += kTwoPi;
  return {start, end};
}

ThreeBrfpMap build_three_brfp_map(double xi1, double xi2, RealAtomicMeasure measure,
                                  ThreeBrfpTargets targets) {
  if (!(xi1 < xi2)) throw DomainError("build_three_brfp_map: need xi1 < xi2");
  if (std::abs(measure.xi1() - xi1) > 1e-15 || std::abs(measure.xi2() - xi2) > 1e-15) {
    if (!measure.atoms().empty())
      throw ValidationError("build_three_brfp_map: measure window differs from (xi1, xi2)");
    measure = RealAtomicMeasure({}, xi1, xi2, measure.inside());
  }

  // Phi(xi_j) = xi_j  <=>  alpha + beta xi_j = xi_j - S(xi_j).
  const NevanlinnaRep sum_only(0.0, 0.0, measure);
  Eigen::Matrix2d lhs;
  lhs << 1.0, xi1, 1.0, xi2;
  const Eigen::Vector2d rhs(xi1 - nevanlinna_eval(sum_only, xi1).real(),
                            xi2 - nevanlinna_eval(sum_only, xi2).real());
  const Eigen::Vector2d sol = lhs.fullPivLu().solve(rhs);
  const double alpha = sol(0);
  const double beta = sol(1);
  if (!(beta > 0.0))
    throw InfeasibleError("build_three_brfp_map: solved beta = " + std::to_string(beta) +
                          " is not positive");

  const BoundaryPoint& s1 = targets.sigma1;
  const BoundaryPoint& s2 = targets.sigma2;
  const BoundaryPoint& tau = targets.tau;
  if (s1.distance(s2) <= 1e-12 || s1.distance(tau) <= 1e-12 || s2.distance(tau) <= 1e-12)
    throw DomainError("build_three_brfp_map: target points must be pairwise distinct");

  const CayleyMap h(tau);
  const double y1 = h.forward(s1.value()).real();
  const double y2 = h.forward(s2.value()).real();
  if (!(y1 < y2))
    throw ConstraintError(
        "build_three_brfp_map: targets must be in counter-clockwise order sigma1, sigma2, tau");
  const double slope = (y2 - y1) / (xi2 - xi1);
  const MobiusTransform align(slope, y1 - slope * xi1, 0.0, 1.0);

  return ThreeBrfpMap(NevanlinnaRep(alpha, beta, std::move(measure)), xi1, xi2, targets, h,
                      align);
}

Complex three_brfp_map_eval(const ThreeBrfpMap& map, Complex z) { return map(z); }

}  // namespace loewner
