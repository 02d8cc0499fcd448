#pragma once

#include <span>
#include <vector>

#include "loewner/disk.hpp"

namespace loewner {

/// Radii 1 - 2^-k for k = 4..20.
std::vector<double> default_radii();

/// Two-stage Richardson extrapolation of samples q(h) = L + a h + b h^2 + ...
/// taken at decreasing offsets h_i = 1 - r_i.
struct Extrapolation {
  Complex value;
  /// |last - previous| second-stage extrapolant.
  double error = 0.0;
  /// Ratio |last| / |previous| of second-stage extrapolants (growth indicator).
  double growth = 1.0;
  std::vector<Complex> first_stage;
  std::vector<Complex> second_stage;
};

/// Needs at least three samples; `offsets` strictly decreasing and positive.
Extrapolation richardson(std::span<const double> offsets, std::span<const Complex> samples);

/// Throws DomainError unless radii are strictly increasing inside (0, 1).
void validate_radii(std::span<const double> radii);

}  // namespace loewner
