#include "qpa/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qpa {

namespace {

void require_even_length(std::size_t cells) {
  if (cells == 0 || cells % 2 != 0) {
    throw std::invalid_argument("lattice length must be a positive even number, got " +
                                std::to_string(cells));
  }
}

inline void apply_pair(Amplitude& a, Amplitude& b, const BlockUnitary& u) {
  const Amplitude pa = a;
  const Amplitude pb = b;
  a = u(0, 0) * pa + u(0, 1) * pb;
  b = u(1, 0) * pa + u(1, 1) * pb;
}

}  // namespace

LatticeState::LatticeState(std::vector<Amplitude> amplitudes) : amplitudes_(std::move(amplitudes)) {
  require_even_length(amplitudes_.size());
  const double total = total_probability();
  if (!(std::abs(total - 1.0) <= kNormTolerance)) {
    throw std::invalid_argument("lattice state is not normalized: total probability " +
                                std::to_string(total));
  }
}

double LatticeState::total_probability() const {
  double total = 0.0;
  for (const auto& a : amplitudes_) {
    total += std::norm(a);
  }
  return total;
}

LatticeState init_basis_state(std::size_t cells, std::size_t x) {
  require_even_length(cells);
  if (x >= cells) {
    throw std::out_of_range("basis cell " + std::to_string(x) + " outside lattice of " +
                            std::to_string(cells) + " cells");
  }
  std::vector<Amplitude> amps(cells, Amplitude{0.0, 0.0});
  amps[x] = Amplitude{1.0, 0.0};
  return LatticeState(std::move(amps));
}

void apply_step(std::span<Amplitude> amps, std::size_t t, const BlockUnitary& u) {
  const std::size_t n = amps.size();
  if (t % 2 == 1) {
    for (std::size_t k = 0; k < n; k += 2) {
      apply_pair(amps[k], amps[k + 1], u);
    }
  } else {
    for (std::size_t k = 1; k + 1 < n; k += 2) {
      apply_pair(amps[k], amps[k + 1], u);
    }
    apply_pair(amps[n - 1], amps[0], u);
  }
}

LatticeState step(const LatticeState& state, std::size_t t, const BlockUnitary& u) {
  std::vector<Amplitude> next(state.amplitudes_);
  apply_step(next, t, u);
  return LatticeState(LatticeState::Unchecked{}, std::move(next));
}

std::vector<double> probabilities(std::span<const Amplitude> amps) {
  std::vector<double> out;
  out.reserve(amps.size());
  for (const auto& a : amps) {
    out.push_back(std::norm(a));
  }
  return out;
}

EvolutionTrace::EvolutionTrace(std::vector<LatticeState> steps) : snapshots_(std::move(steps)) {
  if (snapshots_.empty()) {
    throw std::invalid_argument("evolution trace needs at least the initial snapshot");
  }
}

std::vector<std::vector<double>> EvolutionTrace::probability_matrix() const {
  std::vector<std::vector<double>> rows;
  rows.reserve(snapshots_.size());
  for (const auto& s : snapshots_) {
    rows.push_back(probabilities(s));
  }
  return rows;
}

EvolutionTrace evolve(const LatticeState& initial, const BlockUnitary& u, std::size_t max_steps) {
  if (max_steps == 0) {
    throw std::invalid_argument("evolution needs at least one step");
  }
  std::vector<LatticeState> snaps;
  snaps.reserve(max_steps + 1);
  snaps.push_back(initial);
  for (std::size_t t = 1; t <= max_steps; ++t) {
    snaps.push_back(step(snaps.back(), t, u));
  }
  return EvolutionTrace(std::move(snaps));
}

}  // namespace qpa
