#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qpa/lattice.hpp"
#include "qpa/unitary.hpp"

// Reference implementations used to cross-check the pairwise engine and to
// measure propagation speed.
namespace qpa::oracle {

enum class Parity { Odd, Even };

inline Parity parity_of_step(std::size_t t) { return t % 2 == 1 ? Parity::Odd : Parity::Even; }

// Dense L x L row-major matrix of one full update step.
class DenseStepMatrix {
 public:
  explicit DenseStepMatrix(std::size_t cells);

  std::size_t cells() const { return cells_; }
  Amplitude& operator()(std::size_t r, std::size_t c) { return m_[r * cells_ + c]; }
  const Amplitude& operator()(std::size_t r, std::size_t c) const { return m_[r * cells_ + c]; }

  std::vector<Amplitude> apply(std::span<const Amplitude> v) const;
  DenseStepMatrix operator*(const DenseStepMatrix& rhs) const;

  // max_{ij} |(M^dagger M - I)_{ij}|
  double unitarity_error() const;

 private:
  std::size_t cells_;
  std::vector<Amplitude> m_;
};

// Embeds U on the pairs of the given parity. Throws std::invalid_argument for odd or zero L.
DenseStepMatrix dense_step_matrix(const BlockUnitary& u, Parity parity, std::size_t cells);

// Cyclic shift by `offset` cells: (P v)[x] = v[x - offset mod L].
DenseStepMatrix shift_matrix(std::size_t cells, std::size_t offset);

// Evolution by dense matrix-vector products with the two alternating matrices.
EvolutionTrace oracle_evolve(const LatticeState& initial, const BlockUnitary& u, std::size_t max_steps);

// Largest entrywise |a - b| over all snapshots; traces must have equal shape.
double max_deviation(const EvolutionTrace& a, const EvolutionTrace& b);

struct SpeedWindow {
  std::size_t first = 1;
  std::size_t last = 64;
};

struct SpeedEstimate {
  double speed = 0.0;  // lattice units per step
  std::string method;
};

// Least-squares slope of the unwrapped probability-peak position against t
// over the window. The peak is tracked from t = 0 through the window: each
// step moves it to the argmax of |phi_t(x)|^2 (ties within 1e-12 go to the
// cell nearest the previous peak) and the signed cyclic displacement is
// accumulated. Throws std::invalid_argument for windows shorter than 4 steps
// or reaching past the trace.
SpeedEstimate measure_speed(const EvolutionTrace& trace, SpeedWindow window = {});

// Lattice length used for wrap-free speed measurement over a window ending at `last`.
std::size_t speed_lattice_cells(std::size_t last);

}  // namespace qpa::oracle
