#include "loewner/extrapolation.hpp"

#include <cmath>
#include <limits>

namespace loewner {

std::vector<double> default_radii() {
  std::vector<double> r;
  for (int k = 4; k <= 20; ++k) r.push_back(1.0 - std::ldexp(1.0, -k));
  return r;
}

void validate_radii(std::span<const double> radii) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0 && radii[i] < 1.0))
      throw DomainError("radii must lie in the open interval (0, 1)");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw DomainError("radii must be strictly increasing");
  }
}

Extrapolation richardson(std::span<const double> offsets, std::span<const Complex> samples) {
  const std::size_t n = samples.size();
  if (n < 3 || offsets.size() != n)
    throw DomainError("richardson: need at least three samples with matching offsets");

  Extrapolation out;
  // Eliminates the linear term: exact for L + a h.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h0 = offsets[i];
    const double h1 = offsets[i + 1];
    out.first_stage.push_back((h0 * samples[i + 1] - h1 * samples[i]) / (h0 - h1));
  }
  // First-stage remainder is -b h_i h_{i+1}; eliminate it.
  for (std::size_t i = 0; i + 1 < out.first_stage.size(); ++i) {
    const double g0 = offsets[i] * offsets[i + 1];
    const double g1 = offsets[i + 1] * offsets[i + 2];
    out.second_stage.push_back((g0 * out.first_stage[i + 1] - g1 * out.first_stage[i]) /
                               (g0 - g1));
  }

  const auto& s2 = out.second_stage;
  out.value = s2.back();
  const Complex previous = s2.size() >= 2 ? s2[s2.size() - 2] : out.first_stage.back();
  out.error = std::abs(out.value - previous);
  if (std::abs(previous) > 0.0)
    out.growth = std::abs(out.value) / std::abs(previous);
  else
    out.growth = std::abs(out.value) > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  return out;
}

}  // namespace loewner
