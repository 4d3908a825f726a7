#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "qpa/density.hpp"
#include "qpa/unitary.hpp"

namespace qpa::ga {

inline constexpr double kThetaLower = 0.0;
inline constexpr double kThetaUpper = 90.0;
inline constexpr double kPhaseLower = -180.0;
inline constexpr double kPhaseUpper = 180.0;
inline constexpr std::int64_t kZUpper = 4294967295;  // 2^32 - 1

// Random draws used by the operators. Kept abstract so the operators can be
// driven by scripted draws in tests.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual double uniform01() = 0;                       // [0, 1)
  virtual double uniform(double lower, double upper) = 0;  // [lower, upper]
  virtual std::int64_t uniform_int(std::int64_t lower, std::int64_t upper) = 0;  // inclusive
  virtual double normal(double stddev) = 0;             // N(0, stddev^2)
};

class Rng final : public RandomSource {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() override;
  double uniform(double lower, double upper) override;
  std::int64_t uniform_int(std::int64_t lower, std::int64_t upper) override;
  double normal(double stddev) override;

 private:
  std::mt19937_64 engine_;
};

// Seed of the independent stream owned by (generation, index) under a master seed.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t generation, std::uint64_t index);

struct Individual {
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::uint32_t z = 0;
  int fitness = -1;  // -1 until evaluated
  std::size_t best_step = 0;

  UnitaryParams params() const { return UnitaryParams::from_angles(theta, alpha, beta, gamma); }
  bool evaluated() const { return fitness >= 0; }
  bool same_genes(const Individual& o) const {
    return theta == o.theta && alpha == o.alpha && beta == o.beta && gamma == o.gamma && z == o.z;
  }
  bool operator==(const Individual&) const = default;
};

bool genes_in_range(const Individual& ind);

// Table defaults: std 0.05 rad for theta and 0.1 rad for the phases, expressed in degrees.
inline constexpr double kDefaultThetaStdDeg = 0.05 * 180.0 / 3.14159265358979323846;
inline constexpr double kDefaultPhaseStdDeg = 0.1 * 180.0 / 3.14159265358979323846;

struct GaConfig {
  std::size_t pop_size = 200;
  std::size_t max_gen = 1000;
  double crossover_rate = 0.25;
  double mutation_rate = 0.90;
  double theta_std = kDefaultThetaStdDeg;
  double phase_std = kDefaultPhaseStdDeg;
  double z_std = 20.0;
  CodeScheme code = CodeScheme::Binary;
  std::size_t max_steps = kDefaultMaxSteps;
  std::uint64_t master_seed = 1;
  std::size_t threads = 0;  // 0 picks the hardware concurrency

  // Throws std::invalid_argument on out-of-range rates, pop_size < 2, negative stds, or max_steps == 0.
  void validate() const;
};

// Out-of-range values are replaced by a uniform draw in [lower, upper].
double repair(double value, double lower, double upper, RandomSource& rng);
std::uint32_t repair_z(std::int64_t value, RandomSource& rng);

Individual random_individual(RandomSource& rng);

// Per gene: with probability mutation_rate add N(0, std) (rounded for Z), then repair.
Individual mutate(const Individual& ind, const GaConfig& cfg, RandomSource& rng, bool* any_mutated = nullptr);

// Per gene: keep the gene of `ind` if a uniform draw is below crossover_rate, else take the partner's.
Individual crossover(const Individual& ind, const Individual& partner, double crossover_rate, RandomSource& rng);

enum class OffspringOrigin { Copy, MutationOnly, CrossoverOnly, Both };

struct Offspring {
  Individual child;
  OffspringOrigin origin = OffspringOrigin::Copy;
};

// With probability crossover_rate cross with a uniformly chosen distinct
// partner, then always apply mutation.
Offspring make_offspring(std::size_t index, const std::vector<Individual>& population, const GaConfig& cfg,
                         RandomSource& rng);

// The parent survives only if strictly fitter.
const Individual& select_survivor(const Individual& parent, const Individual& child);

struct GenerationRecord {
  std::size_t generation = 0;
  int best_fitness = 0;
  double mean_fitness = 0.0;
  Individual best;
};

struct GaResult {
  Individual best;
  std::vector<GenerationRecord> history;
};

using Evaluator = std::function<FitnessReport(const Individual&)>;

// Fitness evaluation through fitness_appendix with the config's code and step cap.
Evaluator appendix_evaluator(const GaConfig& cfg);

// Evaluates every unevaluated member, possibly on several threads. Results do
// not depend on the thread count.
void evaluate_population(std::vector<Individual>& population, const Evaluator& eval, std::size_t threads);

using ProgressCallback = std::function<void(const GenerationRecord&)>;

GaResult run_ga(const GaConfig& cfg, const ProgressCallback& progress = {});
GaResult run_ga(const GaConfig& cfg, const Evaluator& eval, const ProgressCallback& progress = {});

}  // namespace qpa::ga
