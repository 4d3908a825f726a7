#include "qpa/ga.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace qpa::ga {

double Rng::uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

double Rng::uniform(double lower, double upper) {
  // generate_canonical can round up to 1.0.
  const double v = lower + (upper - lower) * uniform01();
  return std::clamp(v, lower, upper);
}

std::int64_t Rng::uniform_int(std::int64_t lower, std::int64_t upper) {
  return std::uniform_int_distribution<std::int64_t>(lower, upper)(engine_);
}

double Rng::normal(double stddev) {
  if (stddev == 0.0) {
    return 0.0;
  }
  return std::normal_distribution<double>(0.0, stddev)(engine_);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t generation, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(master_seed) ^ generation) ^ index);
}

bool genes_in_range(const Individual& ind) {
  return ind.theta >= kThetaLower && ind.theta <= kThetaUpper && ind.alpha >= kPhaseLower &&
         ind.alpha <= kPhaseUpper && ind.beta >= kPhaseLower && ind.beta <= kPhaseUpper &&
         ind.gamma >= kPhaseLower && ind.gamma <= kPhaseUpper;
}

void GaConfig::validate() const {
  if (pop_size < 2) {
    throw std::invalid_argument("pop_size must be at least 2");
  }
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    throw std::invalid_argument("crossover_rate must lie in [0, 1]");
  }
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    throw std::invalid_argument("mutation_rate must lie in [0, 1]");
  }
  if (!(theta_std >= 0.0) || !(phase_std >= 0.0) || !(z_std >= 0.0)) {
    throw std::invalid_argument("mutation standard deviations must be non-negative");
  }
  if (max_steps == 0) {
    throw std::invalid_argument("max_steps must be at least 1");
  }
}

double repair(double value, double lower, double upper, RandomSource& rng) {
  if (value >= lower && value <= upper) {
    return value;
  }
  return rng.uniform(lower, upper);
}

std::uint32_t repair_z(std::int64_t value, RandomSource& rng) {
  if (value >= 0 && value <= kZUpper) {
    return static_cast<std::uint32_t>(value);
  }
  return static_cast<std::uint32_t>(rng.uniform_int(0, kZUpper));
}

Individual random_individual(RandomSource& rng) {
  Individual ind;
  ind.theta = rng.uniform(kThetaLower, kThetaUpper);
  ind.alpha = rng.uniform(kPhaseLower, kPhaseUpper);
  ind.beta = rng.uniform(kPhaseLower, kPhaseUpper);
  ind.gamma = rng.uniform(kPhaseLower, kPhaseUpper);
  ind.z = static_cast<std::uint32_t>(rng.uniform_int(0, kZUpper));
  return ind;
}

Individual mutate(const Individual& ind, const GaConfig& cfg, RandomSource& rng, bool* any_mutated) {
  Individual out = ind;
  bool mutated = false;
  auto perturb = [&](double value, double stddev) {
    if (rng.uniform01() < cfg.mutation_rate) {
      mutated = true;
      return value + rng.normal(stddev);
    }
    return value;
  };
  out.theta = repair(perturb(ind.theta, cfg.theta_std), kThetaLower, kThetaUpper, rng);
  out.alpha = repair(perturb(ind.alpha, cfg.phase_std), kPhaseLower, kPhaseUpper, rng);
  out.beta = repair(perturb(ind.beta, cfg.phase_std), kPhaseLower, kPhaseUpper, rng);
  out.gamma = repair(perturb(ind.gamma, cfg.phase_std), kPhaseLower, kPhaseUpper, rng);

  std::int64_t z = ind.z;
  if (rng.uniform01() < cfg.mutation_rate) {
    mutated = true;
    z += static_cast<std::int64_t>(std::llround(rng.normal(cfg.z_std)));
  }
  out.z = repair_z(z, rng);

  out.fitness = -1;
  out.best_step = 0;
  if (any_mutated != nullptr) {
    *any_mutated = mutated;
  }
  return out;
}

Individual crossover(const Individual& ind, const Individual& partner, double crossover_rate, RandomSource& rng) {
  Individual out = ind;
  auto pick = [&](auto own, auto other) { return rng.uniform01() < crossover_rate ? own : other; };
  out.theta = pick(ind.theta, partner.theta);
  out.alpha = pick(ind.alpha, partner.alpha);
  out.beta = pick(ind.beta, partner.beta);
  out.gamma = pick(ind.gamma, partner.gamma);
  out.z = pick(ind.z, partner.z);
  out.fitness = -1;
  out.best_step = 0;
  return out;
}

Offspring make_offspring(std::size_t index, const std::vector<Individual>& population, const GaConfig& cfg,
                         RandomSource& rng) {
  if (index >= population.size()) {
    throw std::out_of_range("offspring parent index outside the population");
  }
  const Individual& parent = population[index];
  Individual child = parent;
  bool crossed = false;
  if (population.size() > 1 && rng.uniform01() < cfg.crossover_rate) {
    auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(population.size()) - 2));
    if (j >= index) {
      ++j;
    }
    child = crossover(parent, population[j], cfg.crossover_rate, rng);
    crossed = true;
  }
  bool mutated = false;
  child = mutate(child, cfg, rng, &mutated);

  Offspring out{std::move(child), OffspringOrigin::Copy};
  if (crossed && mutated) {
    out.origin = OffspringOrigin::Both;
  } else if (crossed) {
    out.origin = OffspringOrigin::CrossoverOnly;
  } else if (mutated) {
    out.origin = OffspringOrigin::MutationOnly;
  }
  return out;
}

const Individual& select_survivor(const Individual& parent, const Individual& child) {
  return parent.fitness > child.fitness ? parent : child;
}

Evaluator appendix_evaluator(const GaConfig& cfg) {
  return [code = cfg.code, steps = cfg.max_steps](const Individual& ind) {
    return fitness_appendix(ind.params(), Partition(ind.z), code, steps);
  };
}

void evaluate_population(std::vector<Individual>& population, const Evaluator& eval, std::size_t threads) {
  auto evaluate_one = [&](Individual& ind) {
    if (ind.evaluated()) {
      return;
    }
    const FitnessReport r = eval(ind);
    ind.fitness = r.fitness;
    ind.best_step = r.best_step;
  };

  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = std::min(threads, population.size());
  if (threads <= 1) {
    for (auto& ind : population) {
      evaluate_one(ind);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < population.size(); i = next.fetch_add(1)) {
        evaluate_one(population[i]);
      }
    });
  }
}

namespace {

GenerationRecord summarize(std::size_t generation, const std::vector<Individual>& population) {
  GenerationRecord rec;
  rec.generation = generation;
  std::size_t best = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < population.size(); ++i) {
    sum += population[i].fitness;
    if (population[i].fitness > population[best].fitness) {
      best = i;
    }
  }
  rec.best = population[best];
  rec.best_fitness = rec.best.fitness;
  rec.mean_fitness = sum / static_cast<double>(population.size());
  return rec;
}

}  // namespace

GaResult run_ga(const GaConfig& cfg, const ProgressCallback& progress) {
  return run_ga(cfg, appendix_evaluator(cfg), progress);
}

GaResult run_ga(const GaConfig& cfg, const Evaluator& eval, const ProgressCallback& progress) {
  cfg.validate();
  const int perfect = static_cast<int>(kFiveDigits.cells());

  std::vector<Individual> population;
  population.reserve(cfg.pop_size);
  for (std::size_t i = 0; i < cfg.pop_size; ++i) {
    Rng rng(stream_seed(cfg.master_seed, 0, i));
    population.push_back(random_individual(rng));
  }
  evaluate_population(population, eval, cfg.threads);

  GaResult result;
  auto record = [&](std::size_t generation) {
    result.history.push_back(summarize(generation, population));
    if (progress) {
      progress(result.history.back());
    }
    return result.history.back().best_fitness >= perfect;
  };

  bool solved = record(0);
  for (std::size_t gen = 1; gen <= cfg.max_gen && !solved; ++gen) {
    std::vector<Individual> offspring;
    offspring.reserve(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) {
      Rng rng(stream_seed(cfg.master_seed, gen, i));
      offspring.push_back(make_offspring(i, population, cfg, rng).child);
    }
    evaluate_population(offspring, eval, cfg.threads);
    for (std::size_t i = 0; i < population.size(); ++i) {
      population[i] = select_survivor(population[i], offspring[i]);
    }
    solved = record(gen);
  }
  result.best = result.history.back().best;
  return result;
}

}  // namespace qpa::ga
