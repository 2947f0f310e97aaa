#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "wpevo/genome.hpp"
#include "wpevo/random.hpp"

namespace wpevo {

struct EvolutionConfig {
  std::size_t population_size = 100;
  double crossover_prob = 0.6;
  double mutation_prob = 0.4;
  double per_gene_prob = 0.1;
  double structural_prob = 0.1;
  double gaussian_sigma = 1.0;
  double init_fraction = 0.1;
  std::uint64_t master_seed = 0;
  std::size_t threads = 1;

  void validate() const;
};

/// Maximization convention throughout.
using Objectives = std::vector<double>;

/// Cached evaluation of one genome under the current task and reference.
struct Fitness {
  double task = 0.0;     // normalized task fitness in [0, 1]
  double penalty = 0.0;  // weight protection penalty, 0 without a reference
  double revised = 0.0;  // task - penalty when weight protection is active
};

struct Individual {
  Genome genome;
  Fitness fitness;
  Objectives objectives;
  std::size_t rank = 0;  // 0 = non-dominated front
  double crowding = 0.0;
};

using Population = std::vector<Individual>;

/// a >= b component-wise and a > b somewhere. Throws ContractViolation on
/// an arity mismatch.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Deb's fast non-dominated sort. Fronts hold indices into `points`, in
/// ascending index order.
std::vector<std::vector<std::size_t>> fast_non_dominated_sort(std::span<const Objectives> points);

/// Crowding distance of each member of `front` (same order). Boundary members
/// of every objective get +inf; objectives with zero range add nothing.
std::vector<double> crowding_distance(std::span<const Objectives> points,
                                      std::span<const std::size_t> front);

/// Sets rank and crowding of every individual from its objectives.
void assign_rank_and_crowding(Population& population);

/// Environmental selection of (mu + lambda) NSGA-II: whole fronts by rank,
/// the last admitted front split by descending crowding (index order on ties).
Population nsga2_select(Population candidates, std::size_t mu);

/// Cut point k in [1, L-1]; weights and mask flags at positions >= k swap.
std::pair<Genome, Genome> single_point_crossover(const Genome& a, const Genome& b, Rng& rng);
std::pair<Genome, Genome> single_point_crossover_at(const Genome& a, const Genome& b,
                                                    std::size_t cut);

/// Per active gene with probability per_gene_prob: w += N(0, sigma^2).
/// Then with probability structural_prob toggles one uniformly chosen mask
/// position; a newly activated connection gets a fresh N(0, 1) weight.
Genome gaussian_mutate(Genome genome, Rng& rng, const EvolutionConfig& config);

/// Binary tournament on (lower rank, then larger crowding).
std::size_t binary_tournament(const Population& population, Rng& rng);

using Evaluator = std::function<Fitness(const Genome&)>;
/// Objective vector of an evaluated individual for the current generation.
using ObjectiveScheme = std::function<Objectives(const Individual&)>;

/// population_size random genomes, not yet evaluated.
Population initial_population(const EvolutionConfig& config, const Topology& topology, Rng& rng);

/// Evaluates every individual; an evaluator exception scores all-zero fitness.
void evaluate_population(Population& population, const Evaluator& evaluate, std::size_t threads);

/// One (mu + lambda) generation: lambda = mu offspring, each a tournament
/// winner's clone, crossed with a second winner (crossover_prob) and mutated
/// (mutation_prob). Offspring streams are seeded per slot from one draw of
/// `rng`, so results do not depend on evaluation order or thread count.
Population evolve_generation(const Population& population, const Evaluator& evaluate,
                             const ObjectiveScheme& scheme, const EvolutionConfig& config,
                             Rng& rng);

}  // namespace wpevo
