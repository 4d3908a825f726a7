#include "qpa/density.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace qpa {

InputLength::InputLength(int n) : n_(n) {
  if (n < 1 || n % 2 == 0) {
    throw std::invalid_argument("input length must be a positive odd number, got " + std::to_string(n));
  }
  if (std::size_t{1} << n > kPartitionBits) {
    throw std::invalid_argument("input length " + std::to_string(n) +
                                " needs more cells than a 32-bit partition can split");
  }
}

std::uint32_t gray_encode(std::uint32_t cell) { return cell ^ (cell >> 1); }

std::uint32_t gray_decode(std::uint32_t value) {
  // Prefix XOR over the higher bits.
  for (std::uint32_t shift = 1; shift < 32; shift <<= 1) {
    value ^= value >> shift;
  }
  return value;
}

std::uint32_t input_for_cell(std::uint32_t cell, CodeScheme code) {
  return code == CodeScheme::Gray ? gray_encode(cell) : cell;
}

std::uint32_t cell_for_input(std::uint32_t x, CodeScheme code) {
  return code == CodeScheme::Gray ? gray_decode(x) : x;
}

int majority_bit(std::uint32_t x, const InputLength& n) {
  if (x >= n.cells()) {
    throw std::out_of_range("input " + std::to_string(x) + " has more than " + std::to_string(n.digits()) +
                            " digits");
  }
  const int ones = std::popcount(x);
  return 2 * ones > n.digits() ? 1 : 0;
}

std::vector<int> majority_table(CodeScheme code, const InputLength& n) {
  std::vector<int> table(n.cells());
  for (std::uint32_t i = 0; i < table.size(); ++i) {
    table[i] = majority_bit(input_for_cell(i, code), n);
  }
  return table;
}

Partition::Partition(std::uint32_t z) : z_(z) {
  for (std::size_t j = 0; j < kPartitionBits; ++j) {
    bits_[j] = static_cast<int>((z >> j) & 1u);
  }
}

Partition Partition::from_bits(std::span<const int> bits) {
  if (bits.size() != kPartitionBits) {
    throw std::invalid_argument("partition needs exactly 32 bits, got " + std::to_string(bits.size()));
  }
  std::uint32_t z = 0;
  for (std::size_t j = 0; j < kPartitionBits; ++j) {
    if (bits[j] != 0 && bits[j] != 1) {
      throw std::invalid_argument("partition bits must be 0 or 1");
    }
    z |= static_cast<std::uint32_t>(bits[j]) << j;
  }
  return Partition(z);
}

std::vector<std::size_t> Partition::zero_cells() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < kPartitionBits; ++j) {
    if (bits_[j] == 0) out.push_back(j);
  }
  return out;
}

std::vector<std::size_t> Partition::one_cells() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < kPartitionBits; ++j) {
    if (bits_[j] == 1) out.push_back(j);
  }
  return out;
}

std::size_t Partition::zero_bit_count() const {
  return kPartitionBits - static_cast<std::size_t>(std::popcount(z_));
}

namespace {

Classification from_zero_mass(double zero) {
  Classification c;
  c.zero_mass = zero;
  c.one_mass = 1.0 - zero;
  if (c.zero_mass > 0.5) {
    c.label = 0;
  } else if (c.one_mass > 0.5) {
    c.label = 1;
  }
  return c;
}

}  // namespace

Classification classify_rotated(std::span<const double> probs, const Partition& partition, std::size_t sample) {
  const std::size_t n = probs.size();
  if (n == 0 || n > kPartitionBits) {
    throw std::invalid_argument("probability vector must have between 1 and 32 entries");
  }
  // Summation runs over lattice positions in increasing order.
  std::size_t cell = (n - sample % n) % n;
  double zero = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    if (partition.bit(cell) == 0) {
      zero += probs[p];
    }
    cell = (cell + 1) % n;
  }
  return from_zero_mass(zero);
}

Classification classify_absolute(std::span<const double> probs, const Partition& partition) {
  return classify_rotated(probs, partition, 0);
}

FitnessReport fitness_appendix(const UnitaryParams& params, const Partition& partition, CodeScheme code,
                               std::size_t max_steps, const InputLength& n) {
  const auto majority = majority_table(code, n);
  const std::size_t cells = n.cells();
  const int perfect = static_cast<int>(cells);

  StreamingEvolution evo(init_basis_state(cells, 0), build_block_unitary(params));
  FitnessReport report;
  report.fitness = -1;
  std::vector<bool> correct(cells);
  std::vector<double> probs(cells);

  for (std::size_t t = 1; t <= max_steps; ++t) {
    evo.advance();
    const auto amps = evo.state().amplitudes();
    for (std::size_t x = 0; x < cells; ++x) {
      probs[x] = std::norm(amps[x]);
    }
    int score = 0;
    for (std::size_t i = 0; i < cells; ++i) {
      const auto c = classify_rotated(probs, partition, i);
      correct[i] = c.label.has_value() && *c.label == majority[i];
      score += correct[i] ? 1 : 0;
    }
    if (score > report.fitness) {
      report.fitness = score;
      report.best_step = t;
      report.per_input_correct = correct;
    }
    if (score == perfect) {
      break;
    }
  }
  if (report.fitness < 0) {
    report.fitness = 0;
    report.per_input_correct.assign(cells, false);
  }
  return report;
}

std::optional<int> classify_direct(const UnitaryParams& params, const Partition& partition, CodeScheme code,
                                   std::uint32_t x, std::size_t steps, const InputLength& n) {
  const std::size_t cells = n.cells();
  if (x >= cells) {
    throw std::out_of_range("input " + std::to_string(x) + " outside the " + std::to_string(cells) +
                            "-cell lattice");
  }
  StreamingEvolution evo(init_basis_state(cells, cell_for_input(x, code)), build_block_unitary(params));
  while (evo.time() < steps) {
    evo.advance();
  }
  return classify_absolute(probabilities(evo.state()), partition).label;
}

}  // namespace qpa
