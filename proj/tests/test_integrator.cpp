#include <doctest.h>

#include <cmath>
#include <random>

#include "loewner/integrator.hpp"

using namespace loewner;

namespace {

const BoundaryPoint kMinusOne(kPi);
const BoundaryPoint kIPoint(kPi / 2);
const double kE = std::exp(1.0);

FieldSpec radial() { return FieldSpec::berkson_porta(0.0, Complex{1.0}); }
FieldSpec parabolic() { return FieldSpec::berkson_porta(1.0, Complex{1.0}); }
FieldSpec dirac_corollary(BoundaryPoint p) {
  return FieldSpec::corollary(AtomicCircleMeasure({{p, 1.0}}, BoundaryPoint(0.0)));
}
FieldSpec two_segment() {
  const BoundaryPoint one(0.0);
  return FieldSpec::corollary(MeasureSchedule(
      {{0.0, 1.0, AtomicCircleMeasure({{kMinusOne, 1.0}}, one)},
       {1.0, 2.0, AtomicCircleMeasure({{kIPoint, 1.0}}, one)}}));
}

std::vector<Complex> grid64() {
  const std::vector<double> radii{0.2, 0.45, 0.7, 0.9};
  return polar_grid(radii, 16);
}

}  // namespace

TEST_SUITE("integrator") {
  TEST_CASE("closed-form flows") {
    CHECK(evolve(radial(), 0.0, 1.0, 0.5).real() == doctest::Approx(0.5 / kE).epsilon(1e-10));
    CHECK(std::abs(evolve(radial(), 0.0, 1.0, 0.5) - 0.18393972058572117) < 1e-10);
    CHECK(std::abs(evolve(dirac_corollary(kMinusOne), 0.0, 1.0, 0.0) - std::tanh(0.5)) < 1e-10);
    CHECK(std::abs(evolve(parabolic(), 0.0, 1.0, 0.0) - 0.5) < 1e-10);
    for (const Complex z : grid64()) {
      const Complex exact = (z + std::tanh(1.0)) / (1.0 + std::tanh(1.0) * z);
      CHECK(std::abs(evolve(dirac_corollary(kMinusOne), 0.0, 2.0, z) - exact) < 1e-9);
      CHECK(std::abs(evolve(radial(), 0.3, 1.3, z) - z / kE) < 1e-10);
    }
  }

  TEST_CASE("identity on the diagonal") {
    for (const Complex z : grid64()) CHECK(evolve(two_segment(), 0.7, 0.7, z) == z);
    CHECK(evolution_map(radial(), 1.0, 1.0)(Complex{0.3, 0.2}) == Complex{0.3, 0.2});
  }

  TEST_CASE("composition law across the breakpoint") {
    const auto f = two_segment();
    ToleranceSettings tol;
    for (const Complex z : grid64()) {
      const Complex direct = evolve(f, 0.0, 2.0, z, tol);
      for (double u : {0.5, 1.0, 1.5}) {
        const Complex composed = evolve(f, u, 2.0, evolve(f, 0.0, u, z, tol), tol);
        CHECK(std::abs(direct - composed) < 10.0 * tol.rel_tol);
      }
    }
  }

  TEST_CASE("rk4 oracle agrees with the adaptive integrator") {
    const auto dm1 = dirac_corollary(kMinusOne);
    for (const Complex z : grid64()) {
      const Complex exact = (z + std::tanh(0.5)) / (1.0 + std::tanh(0.5) * z);
      CHECK(std::abs(rk4_oracle(dm1, 0.0, 1.0, z, 10000) - exact) < 1e-10);
    }
    const auto di = dirac_corollary(kIPoint);
    for (const Complex z : grid64())
      CHECK(std::abs(rk4_oracle(di, 0.0, 1.0, z, 100000) - evolve(di, 0.0, 1.0, z)) < 1e-9);
    const auto ts = two_segment();
    CHECK(std::abs(rk4_oracle(ts, 0.0, 2.0, 0.3, 20000) - evolve(ts, 0.0, 2.0, 0.3)) < 1e-9);
    CHECK_THROWS_AS(rk4_oracle(ts, 0.0, 1.0, 0.3, 0), DomainError);
  }

  TEST_CASE("autonomous semiflow") {
    CHECK(std::abs(autonomous_semiflow(radial(), std::log(2.0), 0.8) - 0.4) < 1e-10);
    const auto dm1 = dirac_corollary(kMinusOne);
    for (const Complex z : grid64()) {
      const Complex two_steps = autonomous_semiflow(dm1, 0.4, autonomous_semiflow(dm1, 0.6, z));
      CHECK(std::abs(two_steps - autonomous_semiflow(dm1, 1.0, z)) < 1e-9);
    }
    CHECK_THROWS_AS(autonomous_semiflow(two_segment(), 1.0, 0.0), ValidationError);
  }

  TEST_CASE("iterating the time-one radial map drives points to the origin") {
    Complex z{0.6, 0.7};
    for (int n = 0; n < 40; ++n) z = autonomous_semiflow(radial(), 1.0, z);
    CHECK(std::abs(z) < 1e-16);
  }

  TEST_CASE("argument validation") {
    CHECK_THROWS_AS(evolve(radial(), 1.0, 0.5, 0.0), DomainError);
    CHECK_THROWS_AS(evolve(radial(), -0.1, 0.5, 0.0), DomainError);
    CHECK_THROWS_AS(evolve(radial(), 0.0, 0.5, 1.0), DomainError);
    ToleranceSettings bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(evolve(radial(), 0.0, 0.5, 0.0, bad), ValidationError);
    bad = {};
    bad.min_step = bad.max_step;
    CHECK_THROWS_AS(evolve(radial(), 0.0, 0.5, 0.0, bad), ValidationError);
  }

  TEST_CASE("step-size underflow raises IntegrationFailure") {
    const auto stiff = FieldSpec::berkson_porta(0.0, Complex{1000.0});
    ToleranceSettings tol;
    tol.min_step = 0.05;
    CHECK_THROWS_AS(evolve(stiff, 0.0, 1.0, 0.5, tol), IntegrationFailure);
  }

  TEST_CASE("trajectory samples are ordered and stay inside the disk") {
    const auto traj = integrate_trajectory(two_segment(), 0.0, 2.0, {0.5, -0.6});
    REQUIRE(traj.samples.size() > 2);
    CHECK(traj.samples.front().t == 0.0);
    CHECK(traj.samples.back().t == 2.0);
    CHECK(traj.field_digest == two_segment().digest());
    bool hit_break = false;
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
      CHECK(traj.samples[i].t > traj.samples[i - 1].t);
      CHECK(std::abs(traj.samples[i].w) < 1.0);
      hit_break = hit_break || traj.samples[i].t == 1.0;
    }
    CHECK(hit_break);
  }

  TEST_CASE("observer sees the start point first") {
    std::vector<double> ts;
    evolve(radial(), 0.25, 0.25, 0.1, {}, [&](double t, Complex) { ts.push_back(t); });
    CHECK(ts == std::vector<double>{0.25});
    ts.clear();
    evolve(radial(), 0.25, 1.0, 0.1, {}, [&](double t, Complex) { ts.push_back(t); });
    CHECK(ts.front() == 0.25);
    CHECK(ts.back() == 1.0);
  }

  TEST_CASE("evolution maps contract the pseudo-hyperbolic distance") {
    std::mt19937_64 rng(0x5c4a27b1d3e1f00dULL);
    std::uniform_real_distribution<double> radius(0.0, 0.9), angle(0.0, kTwoPi);
    const auto f = two_segment();
    const auto phi = evolution_map(f, 0.0, 2.0);
    for (int i = 0; i < 100; ++i) {
      const Complex z = std::polar(radius(rng), angle(rng));
      const Complex w = std::polar(radius(rng), angle(rng));
      CHECK(pseudo_hyperbolic_distance(phi(z), phi(w)) <=
            pseudo_hyperbolic_distance(z, w) + 1e-10);
    }
  }

  TEST_CASE("evolution families are locally Lipschitz in time") {
    const auto f = two_segment();
    for (const Complex z : grid64()) {
      const double bound = 2.0 * (1.0 + std::abs(z)) / (1.0 - std::abs(z));
      for (double s : {0.0, 0.5, 1.2}) {
        const double gap = std::abs(evolve(f, 0.0, s + 0.1, z) - evolve(f, 0.0, s, z));
        CHECK(gap <= bound * 0.1 * 2.0 / (1.0 - std::abs(z)));
      }
    }
  }

  TEST_CASE("hyperbolic derivative at the origin is non-increasing in time") {
    const auto f = two_segment();
    double prev = 1.0;
    for (double t = 0.25; t <= 2.0; t += 0.25) {
      const double h = 1e-5;
      const double d = std::abs(evolve(f, 0.0, t, h) - evolve(f, 0.0, t, -h)) / (2 * h) /
                       one_minus_abs2(evolve(f, 0.0, t, 0.0));
      CHECK(d <= prev + 1e-8);
      prev = d;
    }
  }
}
