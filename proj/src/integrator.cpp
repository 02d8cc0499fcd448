#include "loewner/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace loewner {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
// b - b* (fifth minus embedded fourth order weights).
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kAlpha = 0.7 / 5.0;  // PI controller exponents (Hairer/Wanner)
constexpr double kBeta = 0.4 / 5.0;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

bool inside_guard(Complex w, double guard) {
  const double r = std::abs(w);
  return std::isfinite(r) && r < 1.0 - guard;
}

struct PieceState {
  double t;
  Complex w;
  double h;  // step hint carried between pieces
};

// Integrates the frozen generator over [a, b].
void integrate_piece(const FrozenField& g, double b, PieceState& st, const ToleranceSettings& tol,
                     const StepObserver& observer) {
  Complex k1 = g(st.w);
  double h = std::min({st.h, tol.max_step, b - st.t});
  double err_prev = 1e-4;
  bool rejected_last = false;

  while (st.t < b) {
    const double remaining = b - st.t;
    bool last = false;
    if (remaining <= h * (1.0 + 1e-12) || remaining - h < tol.min_step) {
      h = remaining;
      last = true;
    }

    const Complex w = st.w;
    std::array<Complex, 7> k{};
    k[0] = k1;
    bool guard_ok = true;
    auto stage = [&](Complex y) {
      if (!inside_guard(y, tol.boundary_guard)) guard_ok = false;
      return guard_ok ? g(y) : Complex{};
    };
    k[1] = stage(w + h * (kA21 * k[0]));
    if (guard_ok) k[2] = stage(w + h * (kA31 * k[0] + kA32 * k[1]));
    if (guard_ok) k[3] = stage(w + h * (kA41 * k[0] + kA42 * k[1] + kA43 * k[2]));
    if (guard_ok)
      k[4] = stage(w + h * (kA51 * k[0] + kA52 * k[1] + kA53 * k[2] + kA54 * k[3]));
    if (guard_ok)
      k[5] = stage(w + h * (kA61 * k[0] + kA62 * k[1] + kA63 * k[2] + kA64 * k[3] +
                            kA65 * k[4]));
    Complex y5{};
    if (guard_ok) {
      y5 = w + h * (kB1 * k[0] + kB3 * k[2] + kB4 * k[3] + kB5 * k[4] + kB6 * k[5]);
      k[6] = stage(y5);
    }

    if (!guard_ok) {
      h *= 0.5;
      rejected_last = true;
      if (h < tol.min_step)
        throw IntegrationFailure("evolve: solution pressed against the unit circle at t = " +
                                     std::to_string(st.t),
                                 st.t, st.w);
      continue;
    }

    const Complex err_vec = h * (kE1 * k[0] + kE3 * k[2] + kE4 * k[3] + kE5 * k[4] +
                                 kE6 * k[5] + kE7 * k[6]);
    const double scale = tol.abs_tol + tol.rel_tol * std::max(std::abs(w), std::abs(y5));
    const double err = std::abs(err_vec) / scale;

    if (std::isfinite(err) && err <= 1.0) {
      st.t = last ? b : st.t + h;
      st.w = y5;
      k1 = k[6];
      if (observer) observer(st.t, st.w);
      const double e = std::max(err, 1e-10);
      double factor = kSafety * std::pow(e, -kAlpha) * std::pow(err_prev, kBeta);
      factor = std::clamp(factor, kMinFactor, kMaxFactor);
      if (rejected_last) factor = std::min(factor, 1.0);
      err_prev = std::max(err, 1e-4);
      rejected_last = false;
      if (!last) h = std::min(h * factor, tol.max_step);
      st.h = h;
    } else {
      const double factor =
          std::isfinite(err) ? std::max(kMinFactor, kSafety * std::pow(err, -0.2)) : kMinFactor;
      h *= factor;
      rejected_last = true;
      if (h < tol.min_step)
        throw IntegrationFailure("evolve: step size underflow at t = " + std::to_string(st.t),
                                 st.t, st.w);
    }
  }
}

}  // namespace

void ToleranceSettings::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw ValidationError("tolerances must be positive");
  if (!(min_step > 0.0) || !(min_step < max_step))
    throw ValidationError("need 0 < min_step < max_step");
  if (!(boundary_guard > 0.0) || !(boundary_guard < 1.0))
    throw ValidationError("boundary_guard must lie in (0, 1)");
}

Complex evolve(const FieldSpec& field, double s, double t, Complex z,
               const ToleranceSettings& tol, const StepObserver& observer) {
  tol.validate();
  if (!(s >= 0.0) || !(t >= s)) throw DomainError("evolve: need 0 <= s <= t");
  if (!(std::abs(z) < 1.0)) throw DomainError("evolve: |z| must be < 1");
  if (observer) observer(s, z);
  if (t == s) return z;

  std::vector<double> nodes{s};
  for (double b : field.breakpoints_in(s, t)) nodes.push_back(b);
  nodes.push_back(t);

  PieceState st{s, z, tol.max_step};
  {
    const Complex g0 = field.frozen_at(0.5 * (nodes[0] + nodes[1]))(z);
    const double speed = std::abs(g0);
    if (speed > 0.0) st.h = std::min(tol.max_step, 0.1 / speed);
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const FrozenField g = field.frozen_at(0.5 * (nodes[i] + nodes[i + 1]));
    integrate_piece(g, nodes[i + 1], st, tol, observer);
    st.t = nodes[i + 1];
  }
  return st.w;
}

Trajectory integrate_trajectory(const FieldSpec& field, double s, double t, Complex z,
                                const ToleranceSettings& tol) {
  Trajectory traj;
  traj.field_digest = field.digest();
  evolve(field, s, t, z, tol,
         [&](double tt, Complex w) { traj.samples.push_back({tt, w}); });
  return traj;
}

EvolutionEvaluator::EvolutionEvaluator(std::shared_ptr<const FieldSpec> field, double s,
                                       double t, ToleranceSettings tol)
    : field_(std::move(field)), s_(s), t_(t), tol_(tol) {
  if (!field_) throw DomainError("evolution_map: null field");
  if (!(s >= 0.0) || !(t >= s)) throw DomainError("evolution_map: need 0 <= s <= t");
  tol_.validate();
}

Complex EvolutionEvaluator::operator()(Complex z) const {
  if (s_ == t_) return z;
  return evolve(*field_, s_, t_, z, tol_);
}

EvolutionEvaluator evolution_map(const FieldSpec& field, double s, double t,
                                 const ToleranceSettings& tol) {
  return EvolutionEvaluator(std::make_shared<const FieldSpec>(field), s, t, tol);
}

EvolutionEvaluator evolution_map(std::shared_ptr<const FieldSpec> field, double s, double t,
                                 const ToleranceSettings& tol) {
  return EvolutionEvaluator(std::move(field), s, t, tol);
}

Complex rk4_oracle(const FieldSpec& field, double s, double t, Complex z, long n_steps) {
  if (n_steps < 1) throw DomainError("rk4_oracle: need n_steps >= 1");
  if (!(s >= 0.0) || !(t >= s)) throw DomainError("rk4_oracle: need 0 <= s <= t");
  if (!(std::abs(z) < 1.0)) throw DomainError("rk4_oracle: |z| must be < 1");
  if (t == s) return z;

  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(n_steps) + 1);
  const double h = (t - s) / static_cast<double>(n_steps);
  for (long k = 0; k < n_steps; ++k) nodes.push_back(s + static_cast<double>(k) * h);
  nodes.push_back(t);
  for (double b : field.breakpoints_in(s, t)) nodes.push_back(b);
  std::sort(nodes.begin(), nodes.end());

  const auto breaks = field.breakpoints_in(s, t);
  std::vector<double> piece_ends = breaks;
  piece_ends.push_back(t);
  std::size_t piece = 0;
  FrozenField g = field.frozen_at(0.5 * (s + piece_ends[0]));

  Complex w = z;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double a = nodes[i];
    const double b = nodes[i + 1];
    if (!(b > a)) continue;
    while (a >= piece_ends[piece]) {
      ++piece;
      const double lo = piece_ends[piece - 1];
      g = field.frozen_at(0.5 * (lo + piece_ends[piece]));
    }
    const double dt = b - a;
    const Complex k1 = g(w);
    const Complex k2 = g(w + 0.5 * dt * k1);
    const Complex k3 = g(w + 0.5 * dt * k2);
    const Complex k4 = g(w + dt * k3);
    w += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(std::abs(w) < 1.0))
      throw IntegrationFailure("rk4_oracle: left the unit disk", b, w);
  }
  return w;
}

Complex autonomous_semiflow(const FieldSpec& generator, double t, Complex z,
                            const ToleranceSettings& tol) {
  if (!generator.is_autonomous())
    throw ValidationError("autonomous_semiflow: generator must be time-constant");
  if (!(t >= 0.0)) throw DomainError("autonomous_semiflow: need t >= 0");
  return evolve(generator, 0.0, t, z, tol);
}

}  // namespace loewner
