#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qpa/lattice.hpp"
#include "qpa/unitary.hpp"

namespace qpa {

enum class CodeScheme { Binary, Gray };

inline constexpr std::size_t kPartitionBits = 32;
inline constexpr std::size_t kDefaultMaxSteps = 2048;

// Number of binary digits n of the classified inputs; the lattice has 2^n cells.
// Only odd n is accepted (majority is then never tied); n <= 5 because the
// partition is a 32-bit integer.
class InputLength {
 public:
  explicit InputLength(int n);
  int digits() const { return n_; }
  std::size_t cells() const { return std::size_t{1} << n_; }

 private:
  int n_;
};

inline const InputLength kFiveDigits{5};

std::uint32_t gray_encode(std::uint32_t cell);
std::uint32_t gray_decode(std::uint32_t value);

// Input value held by a cell under the given code.
std::uint32_t input_for_cell(std::uint32_t cell, CodeScheme code);
// The cell that represents input x (inverse of input_for_cell).
std::uint32_t cell_for_input(std::uint32_t x, CodeScheme code);

// 1 if x has more one-digits than zero-digits among its n digits.
int majority_bit(std::uint32_t x, const InputLength& n);

// Entry i is the majority of the input that cell i represents.
std::vector<int> majority_table(CodeScheme code, const InputLength& n);

// A 32-bit integer whose LSB-first bits split the basis states: bit 0 cells
// classify as majority 0, bit 1 cells as majority 1.
class Partition {
 public:
  explicit Partition(std::uint32_t z);
  // bits[j] for j = 0..31, each 0 or 1; throws std::invalid_argument otherwise.
  static Partition from_bits(std::span<const int> bits);

  std::uint32_t z() const { return z_; }
  int bit(std::size_t index) const { return bits_[index]; }
  const std::array<int, kPartitionBits>& bits() const { return bits_; }
  std::vector<std::size_t> zero_cells() const;
  std::vector<std::size_t> one_cells() const;
  std::size_t zero_bit_count() const;

  bool operator==(const Partition& o) const { return z_ == o.z_; }

 private:
  std::uint32_t z_;
  std::array<int, kPartitionBits> bits_{};
};

inline Partition partition_from_z(std::uint32_t z) { return Partition(z); }

struct Classification {
  std::optional<int> label;  // nullopt when the zero-side mass is exactly one half
  double zero_mass = 0.0;
  double one_mass = 0.0;
};

// Classification of sample i from a single evolution: lattice position p is
// tested against partition bit (p - i) mod L, where L = probs.size().
Classification classify_rotated(std::span<const double> probs, const Partition& partition,
                                std::size_t sample);

// Classification against absolute partition bits.
Classification classify_absolute(std::span<const double> probs, const Partition& partition);

struct FitnessReport {
  int fitness = 0;              // 0..L (32 for n = 5)
  std::size_t best_step = 0;    // earliest step achieving `fitness`
  std::vector<bool> per_input_correct;  // by sample index, at best_step

  bool operator==(const FitnessReport&) const = default;
};

// Evolves once from cell 0 and scores all samples per step via partition
// rotation. The score is recomputed from scratch at every step; evaluation
// stops at the first step where every sample is correct. Returns the best
// per-step score and the earliest step that reached it.
FitnessReport fitness_appendix(const UnitaryParams& params, const Partition& partition, CodeScheme code,
                               std::size_t max_steps = kDefaultMaxSteps,
                               const InputLength& n = kFiveDigits);

// Starts the particle at the cell representing x, evolves `steps` steps, and
// classifies against absolute partition bits.
std::optional<int> classify_direct(const UnitaryParams& params, const Partition& partition, CodeScheme code,
                                   std::uint32_t x, std::size_t steps,
                                   const InputLength& n = kFiveDigits);

}  // namespace qpa
