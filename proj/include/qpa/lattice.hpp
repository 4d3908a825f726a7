#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qpa/unitary.hpp"

namespace qpa {

inline constexpr double kNormTolerance = 1e-9;

// Amplitudes phi_t(x) of a single particle on a periodic lattice of even length L.
class LatticeState {
 public:
  // Throws std::invalid_argument if the length is odd or zero, or if the total
  // probability differs from 1 by more than kNormTolerance.
  explicit LatticeState(std::vector<Amplitude> amplitudes);

  std::size_t size() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  const Amplitude& operator[](std::size_t x) const { return amplitudes_[x]; }

  double total_probability() const;

  bool operator==(const LatticeState&) const = default;

 private:
  friend class StreamingEvolution;
  friend LatticeState step(const LatticeState&, std::size_t, const BlockUnitary&);
  struct Unchecked {};
  LatticeState(Unchecked, std::vector<Amplitude> amplitudes) : amplitudes_(std::move(amplitudes)) {}

  std::vector<Amplitude> amplitudes_;
};

// Throws std::invalid_argument for odd/zero L and std::out_of_range for x >= L.
LatticeState init_basis_state(std::size_t cells, std::size_t x);

// Applies one update in place. Odd t pairs (0,1), (2,3), ...; even t pairs
// (1,2), (3,4), ..., (L-3, L-2) and the wrap pair (L-1, 0). For a pair (a, b):
// [phi'(a); phi'(b)] = U [phi(a); phi(b)].
void apply_step(std::span<Amplitude> amplitudes, std::size_t t, const BlockUnitary& u);

// t >= 1 selects the pairing parity.
LatticeState step(const LatticeState& state, std::size_t t, const BlockUnitary& u);

// |phi(x)|^2 for every cell.
std::vector<double> probabilities(std::span<const Amplitude> amplitudes);
inline std::vector<double> probabilities(const LatticeState& s) { return probabilities(s.amplitudes()); }

// Snapshots t = 0..M.
class EvolutionTrace {
 public:
  explicit EvolutionTrace(std::vector<LatticeState> steps);

  std::size_t steps() const { return snapshots_.size() - 1; }
  std::size_t cells() const { return snapshots_.front().size(); }
  const LatticeState& at(std::size_t t) const { return snapshots_.at(t); }
  const std::vector<LatticeState>& snapshots() const { return snapshots_; }

  // Row t holds |phi_t(x)|^2.
  std::vector<std::vector<double>> probability_matrix() const;

 private:
  std::vector<LatticeState> snapshots_;
};

// Full-history evolution for M >= 1 steps; throws std::invalid_argument for M == 0.
EvolutionTrace evolve(const LatticeState& initial, const BlockUnitary& u, std::size_t max_steps);

// Keeps only the current snapshot; used where per-step history is not needed.
class StreamingEvolution {
 public:
  StreamingEvolution(LatticeState initial, const BlockUnitary& u)
      : state_(std::move(initial)), unitary_(u) {}

  // Advances to the next step and returns its index.
  std::size_t advance() {
    ++t_;
    apply_step(state_.amplitudes_, t_, unitary_);
    return t_;
  }

  std::size_t time() const { return t_; }
  const LatticeState& state() const { return state_; }

 private:
  LatticeState state_;
  BlockUnitary unitary_;
  std::size_t t_ = 0;
};

}  // namespace qpa
