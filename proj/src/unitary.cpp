#include "qpa/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace qpa {

namespace {

double radian(double degrees) { return degrees * std::numbers::pi / 180.0; }

// Quadrant index (0..3) if the angle is an exact multiple of 90 degrees.
std::optional<int> right_angle_quadrant(double degrees) {
  const double r = std::fmod(degrees, 360.0);
  if (std::fmod(r, 90.0) != 0.0) {
    return std::nullopt;
  }
  int q = static_cast<int>(r / 90.0);
  return ((q % 4) + 4) % 4;
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string("unitary parameter ") + name + " is not finite");
  }
}

}  // namespace

double cos_deg(double degrees) {
  if (auto q = right_angle_quadrant(degrees)) {
    constexpr double table[4] = {1.0, 0.0, -1.0, 0.0};
    return table[*q];
  }
  return std::cos(radian(degrees));
}

double sin_deg(double degrees) {
  if (auto q = right_angle_quadrant(degrees)) {
    constexpr double table[4] = {0.0, 1.0, 0.0, -1.0};
    return table[*q];
  }
  return std::sin(radian(degrees));
}

Amplitude phase_deg(double degrees) { return {cos_deg(degrees), sin_deg(degrees)}; }

double derive_delta(double alpha, double beta, double gamma) {
  double d = std::fmod(180.0 - alpha + beta + gamma, 360.0);
  if (d < 0.0) {
    d += 360.0;
  }
  // d + 360 can round up to exactly 360 for tiny negative d.
  if (d >= 360.0) {
    d -= 360.0;
  }
  return d;
}

UnitaryParams UnitaryParams::from_angles(double theta, double alpha, double beta, double gamma) {
  return UnitaryParams{theta, alpha, beta, gamma, derive_delta(alpha, beta, gamma)};
}

BlockUnitary build_block_unitary(const UnitaryParams& p) {
  require_finite(p.theta, "theta");
  require_finite(p.alpha, "alpha");
  require_finite(p.beta, "beta");
  require_finite(p.gamma, "gamma");
  require_finite(p.delta, "delta");
  if (p.theta < 0.0 || p.theta > 90.0) {
    throw std::invalid_argument("theta must lie in [0, 90] degrees, got " + std::to_string(p.theta));
  }
  const double s = sin_deg(p.theta);
  const double c = cos_deg(p.theta);
  BlockUnitary u;
  u(0, 0) = s * phase_deg(p.alpha);
  u(0, 1) = c * phase_deg(p.beta);
  u(1, 0) = c * phase_deg(p.gamma);
  u(1, 1) = s * phase_deg(p.delta);
  return u;
}

double unitarity_error(const BlockUnitary& u) {
  double err = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Amplitude acc = std::conj(u(0, i)) * u(0, j) + std::conj(u(1, i)) * u(1, j);
      if (i == j) {
        acc -= 1.0;
      }
      err = std::max(err, std::abs(acc));
    }
  }
  return err;
}

BlockUnitary swap_unitary() { return build_block_unitary(UnitaryParams::from_angles(0.0, 0.0, 0.0, 0.0)); }

BlockUnitary identity_unitary() {
  return build_block_unitary(UnitaryParams::from_angles(90.0, 0.0, 180.0, 0.0));
}

}  // namespace qpa
