#include "qpa/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qpa::oracle {

DenseStepMatrix::DenseStepMatrix(std::size_t cells) : cells_(cells), m_(cells * cells, Amplitude{0.0, 0.0}) {}

std::vector<Amplitude> DenseStepMatrix::apply(std::span<const Amplitude> v) const {
  if (v.size() != cells_) {
    throw std::invalid_argument("dense step: vector length does not match the matrix");
  }
  std::vector<Amplitude> out(cells_);
  for (std::size_t r = 0; r < cells_; ++r) {
    Amplitude acc{0.0, 0.0};
    for (std::size_t c = 0; c < cells_; ++c) {
      acc += (*this)(r, c) * v[c];
    }
    out[r] = acc;
  }
  return out;
}

DenseStepMatrix DenseStepMatrix::operator*(const DenseStepMatrix& rhs) const {
  if (rhs.cells_ != cells_) {
    throw std::invalid_argument("dense step: dimension mismatch");
  }
  DenseStepMatrix out(cells_);
  for (std::size_t r = 0; r < cells_; ++r) {
    for (std::size_t k = 0; k < cells_; ++k) {
      const Amplitude a = (*this)(r, k);
      if (a == Amplitude{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < cells_; ++c) {
        out(r, c) += a * rhs(k, c);
      }
    }
  }
  return out;
}

double DenseStepMatrix::unitarity_error() const {
  double err = 0.0;
  for (std::size_t i = 0; i < cells_; ++i) {
    for (std::size_t j = 0; j < cells_; ++j) {
      Amplitude acc{0.0, 0.0};
      for (std::size_t k = 0; k < cells_; ++k) {
        acc += std::conj((*this)(k, i)) * (*this)(k, j);
      }
      if (i == j) acc -= 1.0;
      err = std::max(err, std::abs(acc));
    }
  }
  return err;
}

DenseStepMatrix dense_step_matrix(const BlockUnitary& u, Parity parity, std::size_t cells) {
  if (cells == 0 || cells % 2 != 0) {
    throw std::invalid_argument("dense step matrix needs a positive even lattice length, got " +
                                std::to_string(cells));
  }
  DenseStepMatrix m(cells);
  const std::size_t offset = parity == Parity::Odd ? 0 : 1;
  for (std::size_t k = 0; k < cells / 2; ++k) {
    const std::size_t a = (2 * k + offset) % cells;
    const std::size_t b = (2 * k + offset + 1) % cells;
    m(a, a) = u(0, 0);
    m(a, b) = u(0, 1);
    m(b, a) = u(1, 0);
    m(b, b) = u(1, 1);
  }
  return m;
}

DenseStepMatrix shift_matrix(std::size_t cells, std::size_t offset) {
  DenseStepMatrix m(cells);
  for (std::size_t x = 0; x < cells; ++x) {
    m((x + offset) % cells, x) = Amplitude{1.0, 0.0};
  }
  return m;
}

EvolutionTrace oracle_evolve(const LatticeState& initial, const BlockUnitary& u, std::size_t max_steps) {
  if (max_steps == 0) {
    throw std::invalid_argument("evolution needs at least one step");
  }
  const std::size_t cells = initial.size();
  const DenseStepMatrix odd = dense_step_matrix(u, Parity::Odd, cells);
  const DenseStepMatrix even = dense_step_matrix(u, Parity::Even, cells);

  std::vector<LatticeState> snaps;
  snaps.reserve(max_steps + 1);
  snaps.push_back(initial);
  for (std::size_t t = 1; t <= max_steps; ++t) {
    const DenseStepMatrix& m = parity_of_step(t) == Parity::Odd ? odd : even;
    snaps.emplace_back(m.apply(snaps.back().amplitudes()));
  }
  return EvolutionTrace(std::move(snaps));
}

double max_deviation(const EvolutionTrace& a, const EvolutionTrace& b) {
  if (a.steps() != b.steps() || a.cells() != b.cells()) {
    throw std::invalid_argument("traces differ in shape");
  }
  double dev = 0.0;
  for (std::size_t t = 0; t <= a.steps(); ++t) {
    for (std::size_t x = 0; x < a.cells(); ++x) {
      dev = std::max(dev, std::abs(a.at(t)[x] - b.at(t)[x]));
    }
  }
  return dev;
}

namespace {

constexpr double kPeakTieTolerance = 1e-12;

// Signed displacement from -> to on a ring, in (-L/2, L/2].
std::int64_t cyclic_displacement(std::size_t from, std::size_t to, std::size_t cells) {
  const auto n = static_cast<std::int64_t>(cells);
  std::int64_t d = (static_cast<std::int64_t>(to) - static_cast<std::int64_t>(from)) % n;
  if (d < 0) d += n;
  if (d > n / 2) d -= n;
  return d;
}

std::size_t first_argmax(const std::vector<double>& p) {
  return static_cast<std::size_t>(std::distance(p.begin(), std::max_element(p.begin(), p.end())));
}

}  // namespace

SpeedEstimate measure_speed(const EvolutionTrace& trace, SpeedWindow window) {
  if (window.first < 1 || window.last < window.first || window.last - window.first + 1 < 4) {
    throw std::invalid_argument("speed window must start at step 1 or later and span at least 4 steps");
  }
  if (window.last > trace.steps()) {
    throw std::invalid_argument("speed window ends at step " + std::to_string(window.last) +
                                " but the trace has only " + std::to_string(trace.steps()));
  }
  const std::size_t cells = trace.cells();

  std::size_t peak = first_argmax(probabilities(trace.at(0)));
  std::int64_t unwrapped = 0;
  // Exact integer sums; the slope is a single rounding of their ratio.
  std::int64_t n = 0, st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t t = 1; t <= window.last; ++t) {
    const auto p = probabilities(trace.at(t));
    const double top = *std::max_element(p.begin(), p.end());
    std::size_t next = peak;
    std::int64_t best_move = 0;
    bool found = false;
    for (std::size_t x = 0; x < cells; ++x) {
      if (p[x] < top - kPeakTieTolerance) continue;
      const std::int64_t d = cyclic_displacement(peak, x, cells);
      // Nearest to the previous peak; a forward move wins an exact distance tie.
      if (!found || std::llabs(d) < std::llabs(best_move) || (std::llabs(d) == std::llabs(best_move) && d > best_move)) {
        next = x;
        best_move = d;
        found = true;
      }
    }
    unwrapped += best_move;
    peak = next;
    if (t >= window.first) {
      const auto ti = static_cast<std::int64_t>(t);
      ++n;
      st += ti;
      sy += unwrapped;
      stt += ti * ti;
      sty += ti * unwrapped;
    }
  }
  const std::int64_t num = n * sty - st * sy;
  const std::int64_t den = n * stt - st * st;
  SpeedEstimate est;
  est.speed = std::abs(static_cast<double>(num) / static_cast<double>(den));
  est.method = "least-squares slope of unwrapped argmax peak, steps " + std::to_string(window.first) + "-" +
               std::to_string(window.last) + ", L=" + std::to_string(cells);
  return est;
}

std::size_t speed_lattice_cells(std::size_t last) {
  return std::max<std::size_t>(32, std::bit_ceil(4 * std::max<std::size_t>(last, 1)));
}

}  // namespace qpa::oracle
