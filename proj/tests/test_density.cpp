#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <random>
#include <set>

#include "qpa/density.hpp"
#include "qpa/oracle.hpp"
#include "qpa/solutions.hpp"
#include "test_support.hpp"

using namespace qpa;

namespace {

// Arrays printed with the reference fitness routine.
const std::vector<int> kBinaryMajority = {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 1,
                                          0, 0, 0, 1, 0, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1};
const std::vector<int> kGrayMajority = {0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 1, 0, 0,
                                        0, 1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 1, 0, 1, 0, 0};

// Literal transcription of the reference loop: dense-matrix evolution from
// cell 0, per-step score reset, rotated bit lookup `cell = (L - i) % L`.
FitnessReport reference_fitness(const UnitaryParams& p, std::uint32_t z, const std::vector<int>& majority,
                                std::size_t max_steps) {
  const int L = 32;
  int z_binary[32] = {};
  unsigned long zz = z;
  for (int index = 0; index < L; index++) {
    if (zz < 2) {
      z_binary[index] = static_cast<int>(zz);
      index = L;
    } else {
      z_binary[index] = static_cast<int>(zz % 2);
      zz = zz / 2;
    }
  }
  const auto trace = oracle::oracle_evolve(init_basis_state(32, 0), build_block_unitary(p), max_steps);
  FitnessReport best;
  best.fitness = -1;
  for (std::size_t step = 1; step <= max_steps; ++step) {
    int fitness = 0;
    std::vector<bool> correct(32);
    for (int i = 0; i < 32; i++) {
      double zero = 0.0;
      int cell = (L - i) % L;
      for (int index = 0; index < L; index++) {
        if (z_binary[cell] == 0) zero += std::norm(trace.at(step)[index]);
        cell = (cell + 1) % L;
      }
      const double one = 1.0 - zero;
      if ((majority[i] == 0 && zero > 0.5) || (majority[i] == 1 && one > 0.5)) {
        fitness++;
        correct[i] = true;
      }
    }
    if (fitness > best.fitness) {
      best.fitness = fitness;
      best.best_step = step;
      best.per_input_correct = correct;
    }
    if (fitness == 32) break;
  }
  return best;
}

std::uint32_t reflected_majority_z(CodeScheme code) {
  const auto maj = majority_table(code, kFiveDigits);
  std::uint32_t z = 0;
  for (std::uint32_t j = 0; j < 32; ++j) z |= static_cast<std::uint32_t>(maj[(32 - j) % 32]) << j;
  return z;
}

std::uint32_t majority_z(CodeScheme code) {
  const auto maj = majority_table(code, kFiveDigits);
  std::uint32_t z = 0;
  for (std::uint32_t j = 0; j < 32; ++j) z |= static_cast<std::uint32_t>(maj[j]) << j;
  return z;
}

const UnitaryParams kIdentity = UnitaryParams::from_angles(90, 0, 180, 0);

}  // namespace

TEST(InputLength, OnlyOddLengthsUpToFive) {
  EXPECT_EQ(InputLength(5).cells(), 32u);
  EXPECT_EQ(InputLength(1).cells(), 2u);
  EXPECT_THROW(InputLength(4), std::invalid_argument);
  EXPECT_THROW(InputLength(0), std::invalid_argument);
  EXPECT_THROW(InputLength(7), std::invalid_argument);
}

TEST(GrayCode, EncodeExamples) {
  EXPECT_EQ(gray_encode(0), 0u);
  EXPECT_EQ(gray_encode(5), 7u);
  EXPECT_EQ(gray_encode(2), 3u);
}

TEST(GrayCode, AdjacentCellsDifferInOneDigit) {
  for (std::uint32_t i = 0; i + 1 < 32; ++i) {
    EXPECT_EQ(std::popcount(gray_encode(i) ^ gray_encode(i + 1)), 1);
  }
}

TEST(CellForInput, Examples) {
  EXPECT_EQ(cell_for_input(8, CodeScheme::Binary), 8u);
  EXPECT_EQ(cell_for_input(3, CodeScheme::Gray), 2u);
  EXPECT_EQ(cell_for_input(8, CodeScheme::Gray), 15u);
}

TEST(CellForInput, GrayDecodeInvertsEncodeByEnumeration) {
  for (std::uint32_t x = 0; x < 1024; ++x) {
    std::uint32_t found = 0;
    int hits = 0;
    for (std::uint32_t i = 0; i < 1024; ++i) {
      if (gray_encode(i) == x) {
        found = i;
        ++hits;
      }
    }
    ASSERT_EQ(hits, 1);
    ASSERT_EQ(cell_for_input(x, CodeScheme::Gray), found);
  }
}

TEST(Majority, BitExamples) {
  EXPECT_EQ(majority_bit(0, kFiveDigits), 0);
  EXPECT_EQ(majority_bit(7, kFiveDigits), 1);
  EXPECT_EQ(majority_bit(22, kFiveDigits), 1);
  EXPECT_THROW(majority_bit(32, kFiveDigits), std::out_of_range);
}

TEST(Majority, TablesMatchReferenceArrays) {
  EXPECT_EQ(majority_table(CodeScheme::Binary, kFiveDigits), kBinaryMajority);
  EXPECT_EQ(majority_table(CodeScheme::Gray, kFiveDigits), kGrayMajority);
  EXPECT_EQ(majority_table(CodeScheme::Binary, InputLength(1)), (std::vector<int>{0, 1}));
}

TEST(Majority, TablesAreBalanced) {
  for (auto code : {CodeScheme::Binary, CodeScheme::Gray}) {
    const auto t = majority_table(code, kFiveDigits);
    EXPECT_EQ(std::count(t.begin(), t.end(), 0), 16);
  }
}

TEST(PartitionTest, PublishedExampleZeroCells) {
  const auto p = partition_from_z(4279011723u);
  const std::vector<std::size_t> expected = {2, 4, 5, 6, 9, 10, 12, 13, 14, 16, 17, 20, 21, 22, 23};
  EXPECT_EQ(p.zero_cells(), expected);
  EXPECT_EQ(p.zero_bit_count(), 15u);
}

TEST(PartitionTest, Extremes) {
  EXPECT_EQ(partition_from_z(0).zero_cells().size(), 32u);
  EXPECT_TRUE(partition_from_z(0).one_cells().empty());
  EXPECT_EQ(partition_from_z(0xFFFFFFFFu).one_cells().size(), 32u);
  EXPECT_TRUE(partition_from_z(0xFFFFFFFFu).zero_cells().empty());
}

TEST(PartitionTest, RoundTripAndDisjointCover) {
  std::mt19937_64 gen(1);
  std::uniform_int_distribution<std::uint32_t> dist;
  for (int i = 0; i < 2000; ++i) {
    const std::uint32_t z = dist(gen);
    const Partition p(z);
    std::vector<int> bits(p.bits().begin(), p.bits().end());
    ASSERT_EQ(Partition::from_bits(bits).z(), z);
    std::set<std::size_t> all;
    for (auto c : p.zero_cells()) all.insert(c);
    for (auto c : p.one_cells()) ASSERT_TRUE(all.insert(c).second);
    ASSERT_EQ(all.size(), 32u);
  }
}

TEST(PartitionTest, FromBitsRejectsBadInput) {
  EXPECT_THROW(Partition::from_bits(std::vector<int>(31, 0)), std::invalid_argument);
  std::vector<int> bad(32, 0);
  bad[4] = 2;
  EXPECT_THROW(Partition::from_bits(bad), std::invalid_argument);
}

TEST(ClassifyRotated, Examples) {
  std::vector<double> at0(32, 0.0);
  at0[0] = 1.0;
  {
    const auto c = classify_rotated(at0, Partition(0xFFFFFFFEu), 0);  // bits[0] = 0
    EXPECT_EQ(c.label, 0);
    EXPECT_EQ(c.zero_mass, 1.0);
  }
  {
    const auto c = classify_rotated(at0, Partition(0x80000000u), 1);  // bits[31] = 1
    EXPECT_EQ(c.label, 1);
    EXPECT_EQ(c.zero_mass, 0.0);
  }
  const std::vector<double> uniform(32, 1.0 / 32);
  for (std::size_t i : {0u, 5u, 31u}) {
    const auto c = classify_rotated(uniform, Partition(0x0000FFFFu), i);
    EXPECT_FALSE(c.label.has_value());
    EXPECT_EQ(c.zero_mass, 0.5);
  }
}

TEST(ClassifyRotated, MassesAreComplementary) {
  std::mt19937_64 gen(2);
  std::uniform_int_distribution<std::uint32_t> dist;
  for (int i = 0; i < 200; ++i) {
    const auto probs = probabilities(fixtures::random_state(gen, 32));
    const auto c = classify_rotated(probs, Partition(dist(gen)), i % 32);
    ASSERT_EQ(c.zero_mass + c.one_mass, 1.0);
  }
}

TEST(FitnessAppendix, IdentityWithReflectedMajorityScoresPerfectAtStepOne) {
  for (auto code : {CodeScheme::Binary, CodeScheme::Gray}) {
    const auto r = fitness_appendix(kIdentity, Partition(reflected_majority_z(code)), code);
    EXPECT_EQ(r.fitness, 32);
    EXPECT_EQ(r.best_step, 1u);
    EXPECT_EQ(std::count(r.per_input_correct.begin(), r.per_input_correct.end(), true), 32);
  }
}

TEST(FitnessAppendix, PublishedBinaryRunNine) {
  const auto& rec = published_solution("B9");
  const auto r = fitness_appendix(rec.params(), rec.partition(), CodeScheme::Binary);
  EXPECT_EQ(r.fitness, 32);
  EXPECT_EQ(r.best_step, 768u);
}

TEST(FitnessAppendix, PublishedGrayRunFive) {
  const auto& rec = published_solution("G5");
  const auto r = fitness_appendix(rec.params(), rec.partition(), CodeScheme::Gray);
  EXPECT_EQ(r.fitness, 32);
  EXPECT_EQ(r.best_step, 624u);
}

TEST(FitnessAppendix, MatchesReferenceLoopOnRandomIndividuals) {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<std::uint32_t> zdist;
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = fixtures::random_params(gen);
    const std::uint32_t z = zdist(gen);
    const auto code = trial % 2 ? CodeScheme::Gray : CodeScheme::Binary;
    const auto& maj = code == CodeScheme::Gray ? kGrayMajority : kBinaryMajority;
    const auto got = fitness_appendix(p, Partition(z), code, 96);
    const auto want = reference_fitness(p, z, maj, 96);
    ASSERT_EQ(got, want) << "trial " << trial;
  }
}

TEST(FitnessAppendix, ReportInvariantAndDeterminism) {
  std::mt19937_64 gen(5);
  const auto p = fixtures::random_params(gen);
  const Partition z(123456789u);
  const auto a = fitness_appendix(p, z, CodeScheme::Binary, 300);
  const auto b = fitness_appendix(p, z, CodeScheme::Binary, 300);
  EXPECT_EQ(a, b);
  EXPECT_EQ(std::count(a.per_input_correct.begin(), a.per_input_correct.end(), true), a.fitness);
  EXPECT_GE(a.best_step, 1u);
  EXPECT_LE(a.best_step, 300u);
}

TEST(FitnessAppendix, SmallerInputLengthUsesLowBits) {
  // n = 3: identity keeps mass on cell 0; reflected 8-cell majority gives a perfect score.
  const InputLength three(3);
  const auto maj = majority_table(CodeScheme::Binary, three);
  std::uint32_t z = 0;
  for (std::uint32_t j = 0; j < 8; ++j) z |= static_cast<std::uint32_t>(maj[(8 - j) % 8]) << j;
  const auto r = fitness_appendix(kIdentity, Partition(z | 0xFFFFFF00u), CodeScheme::Binary, 10, three);
  EXPECT_EQ(r.fitness, 8);
  EXPECT_EQ(r.best_step, 1u);
}

TEST(ClassifyDirect, IdentityWithMajorityPartition) {
  const Partition z(majority_z(CodeScheme::Binary));
  EXPECT_EQ(classify_direct(kIdentity, z, CodeScheme::Binary, 8, 1), 0);
  EXPECT_EQ(classify_direct(kIdentity, z, CodeScheme::Binary, 8, 50), 0);
  EXPECT_EQ(classify_direct(kIdentity, z, CodeScheme::Binary, 7, 3), 1);
}

TEST(ClassifyDirect, AllZeroPartitionAlwaysSaysZero) {
  const auto swap = UnitaryParams::from_angles(0, 0, 0, 0);
  for (std::uint32_t x = 0; x < 32; ++x) {
    EXPECT_EQ(classify_direct(swap, Partition(0), CodeScheme::Binary, x, 17), 0);
  }
}

TEST(ClassifyDirect, ClassicalSolutionBothCodes) {
  for (auto code : {CodeScheme::Binary, CodeScheme::Gray}) {
    const Partition z(majority_z(code));
    for (std::uint32_t x = 0; x < 32; ++x) {
      EXPECT_EQ(classify_direct(kIdentity, z, code, x, 1), majority_bit(x, kFiveDigits)) << "x=" << x;
    }
  }
}

TEST(ClassifyDirect, SampleZeroMatchesRotatedClassification) {
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<std::uint32_t> zdist;
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = fixtures::random_params(gen);
    const Partition z(zdist(gen));
    const std::size_t steps = 1 + trial * 7;
    const auto trace = evolve(init_basis_state(32, 0), build_block_unitary(p), steps);
    const auto rotated = classify_rotated(probabilities(trace.at(steps)), z, 0).label;
    ASSERT_EQ(classify_direct(p, z, CodeScheme::Binary, 0, steps), rotated);
  }
}
