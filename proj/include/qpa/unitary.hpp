#pragma once

#include <array>
#include <complex>

namespace qpa {

using Amplitude = std::complex<double>;

// Angles are in degrees throughout; radians only appear inside the trig helpers.
struct UnitaryParams {
  double theta = 0.0;  // [0, 90]
  double alpha = 0.0;  // [-180, 180]
  double beta = 0.0;   // [-180, 180]
  double gamma = 0.0;  // [-180, 180]
  double delta = 180.0;  // derived, [0, 360)

  // Builds a parameter set with delta fixed by the phase constraint.
  static UnitaryParams from_angles(double theta, double alpha, double beta, double gamma);

  bool operator==(const UnitaryParams&) const = default;
};

// delta = (180 - alpha + beta + gamma) reduced into [0, 360), so that
// (alpha - beta - gamma + delta) mod 360 == 180.
double derive_delta(double alpha, double beta, double gamma);

// cos/sin of an angle in degrees. Exact at integer multiples of 90 so that the
// theta = 0 swap and theta = 90 identity limits carry no rounding leakage.
double cos_deg(double degrees);
double sin_deg(double degrees);

// e^{i phi} for phi in degrees.
Amplitude phase_deg(double degrees);

// Row-major 2x2 block unitary
//   [[e^{i alpha} sin(theta), e^{i beta} cos(theta)],
//    [e^{i gamma} cos(theta), e^{i delta} sin(theta)]]
struct BlockUnitary {
  std::array<Amplitude, 4> m{};

  const Amplitude& operator()(int row, int col) const { return m[static_cast<std::size_t>(row * 2 + col)]; }
  Amplitude& operator()(int row, int col) { return m[static_cast<std::size_t>(row * 2 + col)]; }

  bool operator==(const BlockUnitary&) const = default;
};

// Throws std::invalid_argument if theta is outside [0, 90] or any angle is not finite.
BlockUnitary build_block_unitary(const UnitaryParams& params);

// max_{ij} |(U^dagger U - I)_{ij}|
double unitarity_error(const BlockUnitary& u);

BlockUnitary swap_unitary();      // theta = 0, alpha = beta = gamma = 0
BlockUnitary identity_unitary();  // theta = 90, alpha = 0, beta = 180, gamma = 0

}  // namespace qpa
