// Randomized property checks with fixed seeds.
#include <doctest.h>

#include <cmath>
#include <random>

#include "loewner/boundary.hpp"

using namespace loewner;

namespace {

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  Complex disk(double rmax = 0.95) {
    return std::polar(rmax * std::sqrt(uniform(0, 1)), uniform(0, kTwoPi));
  }
  BoundaryPoint circle() { return BoundaryPoint(uniform(0, kTwoPi)); }
};

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("automorphisms preserve the pseudo-hyperbolic distance") {
    Sampler s(11);
    for (int trial = 0; trial < 10; ++trial) {
      const BoundaryPoint a = s.circle();
      const BoundaryPoint b(a.angle() + s.uniform(0.3, kTwoPi - 0.3));
      const auto h = build_automorphism(a, b, s.uniform(0.2, 5.0));
      for (int i = 0; i < 10; ++i) {
        const Complex z = s.disk(0.9), w = s.disk(0.9);
        CHECK(std::abs(pseudo_hyperbolic_distance(h(z), h(w)) - pseudo_hyperbolic_distance(z, w)) <
              1e-12);
      }
    }
  }

  TEST_CASE("Herglotz transforms of positive measures have positive real part") {
    Sampler s(23);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<CircleAtom> atoms;
      const int n = 1 + static_cast<int>(s.uniform(0, 5));
      for (int k = 0; k < n; ++k)
        atoms.push_back({BoundaryPoint(2.0 * kPi * k / n + 0.1), s.uniform(0.1, 2.0)});
      const AtomicCircleMeasure mu(atoms);
      const double c = s.uniform(-3, 3);
      for (int i = 0; i < 20; ++i) CHECK(herglotz_eval(mu, c, s.disk()).real() > 0.0);
    }
  }

  TEST_CASE("Nevanlinna functions preserve the upper half-plane") {
    Sampler s(37);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<RealAtom> atoms;
      for (int k = 0; k < 3; ++k)
        atoms.push_back({s.uniform(-0.9, 0.9), s.uniform(0.0, 2.0) + 1e-3});
      const NevanlinnaRep rep(s.uniform(-1, 1), s.uniform(0, 3),
                              RealAtomicMeasure(atoms, -1, 1, true));
      for (int i = 0; i < 20; ++i) {
        const Complex z{s.uniform(-5, 5), s.uniform(1e-3, 5)};
        CHECK(nevanlinna_eval(rep, z).imag() > 0.0);
      }
    }
  }

  TEST_CASE("three-BRFP maps satisfy Cowen-Pommerenke and contract at tau") {
    Sampler s(41);
    for (int trial = 0; trial < 20; ++trial) {
      const double xi1 = s.uniform(-2, 0), xi2 = s.uniform(0.5, 2);
      std::vector<RealAtom> atoms;
      for (int k = 0; k < 2; ++k) {
        // Stay away from the window ends so the atoms are distinct from xi1, xi2.
        const double x = xi1 + (xi2 - xi1) * s.uniform(0.05, 0.95);
        if (!atoms.empty() && std::abs(atoms[0].location - x) < 1e-6) continue;
        atoms.push_back({x, s.uniform(0.05, 1.0)});
      }
      const auto map = build_three_brfp_map(xi1, xi2, RealAtomicMeasure(atoms, xi1, xi2, true),
                                            natural_targets(xi1, xi2));
      CHECK(map.dilation_tau() < 1.0);
      const double d1 = map.dilation_sigma1(), d2 = map.dilation_sigma2();
      CHECK(d1 > 1.0);
      CHECK(d2 > 1.0);
      CHECK(cowen_pommerenke_residual(d1, map.dilation_tau()) <= 1e-12);
      CHECK(cowen_pommerenke_residual(d2, map.dilation_tau()) <= 1e-12);
    }
  }

  TEST_CASE("evolution maps of random probability schedules satisfy Schwarz-Pick") {
    Sampler s(53);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<ScheduleSegment> segs;
      for (int k = 0; k < 2; ++k) {
        const double w = s.uniform(0.1, 0.9);
        segs.push_back({double(k), double(k + 1),
                        AtomicCircleMeasure({{BoundaryPoint(s.uniform(0.5, kTwoPi - 0.5)), w},
                                             {BoundaryPoint(kPi), 1.0 - w}},
                                            BoundaryPoint(0.0))});
      }
      const auto f = FieldSpec::corollary(MeasureSchedule(segs));
      const auto phi = evolution_map(f, 0.0, 2.0);
      for (int i = 0; i < 10; ++i) {
        const Complex z = s.disk(0.9), w = s.disk(0.9);
        CHECK(pseudo_hyperbolic_distance(phi(z), phi(w)) <=
              pseudo_hyperbolic_distance(z, w) + 1e-10);
      }
    }
  }
}
