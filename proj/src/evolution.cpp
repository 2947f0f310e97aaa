#include "wpevo/evolution.hpp"

#include <string>

#include "wpevo/errors.hpp"
#include "wpevo/parallel.hpp"

namespace wpevo {

void EvolutionConfig::validate() const {
  auto check = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError(std::string("evolution.") + name + " must lie in [0, 1]");
    }
  };
  check(crossover_prob, "crossover_prob");
  check(mutation_prob, "mutation_prob");
  check(per_gene_prob, "per_gene_prob");
  check(structural_prob, "structural_prob");
  check(init_fraction, "init_fraction");
  if (!(gaussian_sigma >= 0.0)) throw ConfigError("evolution.gaussian_sigma must be >= 0");
  if (population_size < 2) throw ConfigError("evolution.population_size must be >= 2");
}

std::pair<Genome, Genome> single_point_crossover_at(const Genome& a, const Genome& b,
                                                    std::size_t cut) {
  if (a.size() != b.size() || !(a.topology() == b.topology())) {
    throw StructuralError("crossover parents differ in length");
  }
  if (cut == 0 || cut >= a.size()) throw ContractViolation("crossover cut outside [1, L-1]");
  Genome first = a;
  Genome second = b;
  for (std::size_t i = cut; i < a.size(); ++i) {
    first.set_weight(i, b.weight(i));
    first.set_active(i, b.active(i));
    second.set_weight(i, a.weight(i));
    second.set_active(i, a.active(i));
  }
  return {std::move(first), std::move(second)};
}

std::pair<Genome, Genome> single_point_crossover(const Genome& a, const Genome& b, Rng& rng) {
  if (a.size() != b.size()) throw StructuralError("crossover parents differ in length");
  if (a.size() < 2) return {a, b};
  std::uniform_int_distribution<std::size_t> cut(1, a.size() - 1);
  return single_point_crossover_at(a, b, cut(rng));
}

Genome gaussian_mutate(Genome genome, Rng& rng, const EvolutionConfig& config) {
  for (std::size_t i = 0; i < genome.size(); ++i) {
    if (!genome.active(i)) continue;
    if (bernoulli(rng, config.per_gene_prob)) {
      genome.set_weight(i, genome.weight(i) + config.gaussian_sigma * standard_normal(rng));
    }
  }
  if (genome.size() > 0 && bernoulli(rng, config.structural_prob)) {
    std::uniform_int_distribution<std::size_t> pick(0, genome.size() - 1);
    const std::size_t i = pick(rng);
    if (genome.active(i)) {
      genome.set_active(i, false);
    } else {
      genome.set_active(i, true);
      genome.set_weight(i, standard_normal(rng));
    }
  }
  return genome;
}

std::size_t binary_tournament(const Population& population, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
  const std::size_t a = pick(rng);
  const std::size_t b = pick(rng);
  const Individual& x = population[a];
  const Individual& y = population[b];
  if (y.rank < x.rank || (y.rank == x.rank && y.crowding > x.crowding)) return b;
  return a;
}

Population initial_population(const EvolutionConfig& config, const Topology& topology, Rng& rng) {
  Population population(config.population_size);
  for (auto& ind : population) ind.genome = random_genome(topology, config.init_fraction, rng);
  return population;
}

namespace {

Fitness safe_evaluate(const Evaluator& evaluate, const Genome& genome) {
  try {
    return evaluate(genome);
  } catch (const EvaluationError&) {
    return Fitness{};
  }
}

}  // namespace

void evaluate_population(Population& population, const Evaluator& evaluate, std::size_t threads) {
  parallel_for(population.size(), threads, [&](std::size_t i) {
    population[i].fitness = safe_evaluate(evaluate, population[i].genome);
  });
}

Population evolve_generation(const Population& population, const Evaluator& evaluate,
                             const ObjectiveScheme& scheme, const EvolutionConfig& config,
                             Rng& rng) {
  if (population.empty()) throw ContractViolation("evolve_generation on an empty population");
  const std::size_t mu = population.size();

  Population parents = population;
  for (auto& ind : parents) ind.objectives = scheme(ind);
  assign_rank_and_crowding(parents);

  const std::uint64_t generation_seed = rng();
  Population offspring(mu);
  std::vector<std::uint8_t> needs_eval(mu, 0);
  for (std::size_t slot = 0; slot < mu; ++slot) {
    Rng local(mix_seed(generation_seed, slot));
    const std::size_t first = binary_tournament(parents, local);
    Genome child = parents[first].genome;
    std::size_t second = first;
    if (bernoulli(local, config.crossover_prob)) {
      second = binary_tournament(parents, local);
      child = single_point_crossover(child, parents[second].genome, local).first;
    }
    if (bernoulli(local, config.mutation_prob)) child = gaussian_mutate(std::move(child), local, config);

    // Evaluation is a pure function of the genome, so an unchanged clone
    // inherits its parent's cached fitness.
    if (child == parents[first].genome) {
      offspring[slot].fitness = parents[first].fitness;
    } else if (child == parents[second].genome) {
      offspring[slot].fitness = parents[second].fitness;
    } else {
      needs_eval[slot] = 1;
    }
    offspring[slot].genome = std::move(child);
  }

  parallel_for(mu, config.threads, [&](std::size_t i) {
    if (needs_eval[i]) offspring[i].fitness = safe_evaluate(evaluate, offspring[i].genome);
  });

  Population combined = std::move(parents);
  combined.reserve(2 * mu);
  for (auto& ind : offspring) {
    ind.objectives = scheme(ind);
    combined.push_back(std::move(ind));
  }
  return nsga2_select(std::move(combined), mu);
}

}  // namespace wpevo
