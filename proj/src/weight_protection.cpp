#include "wpevo/weight_protection.hpp"

#include <algorithm>
#include <cmath>

#include "wpevo/errors.hpp"

namespace wpevo {

void WpConfig::validate() const {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) throw ConfigError("wp.lambda1/2 must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("wp.p must lie in [0, 1]");
}

PenaltyModel::PenaltyModel(const ReferenceModel& reference, double lambda1, double lambda2)
    : topology_(reference.genome.topology()),
      anchor_(reference.genome.size(), 0.0),
      coeff_(reference.genome.size(), lambda2) {
  for (std::size_t i = 0; i < anchor_.size(); ++i) {
    if (reference.genome.active(i)) {
      anchor_[i] = reference.genome.weight(i);
      coeff_[i] = lambda1;
    }
  }
}

double PenaltyModel::operator()(const Genome& genome, const simd::KernelTable& kernels) const {
  if (genome.size() != anchor_.size() || !(genome.topology() == topology_)) {
    throw StructuralError("genome layout differs from the reference model");
  }
  const std::vector<double> theta = genome.effective_weights();
  return kernels.weighted_squared_distance(theta.data(), anchor_.data(), coeff_.data(),
                                           theta.size());
}

double wp_penalty(const Genome& genome, const ReferenceModel& reference, const WpConfig& wp) {
  return PenaltyModel(reference, wp.lambda1, wp.lambda2)(genome);
}

double revised_fitness(double task_fitness, double penalty) { return task_fitness - penalty; }

ReferenceModel select_reference(const Population& population, TaskId finished_task,
                                const ReferenceModel* previous) {
  if (population.empty()) throw ContractViolation("select_reference on an empty population");
  std::size_t best = 0;
  for (std::size_t i = 1; i < population.size(); ++i) {
    if (population[i].fitness.revised > population[best].fitness.revised) best = i;
  }
  ReferenceModel reference{population[best].genome, {}};
  if (previous != nullptr) reference.tasks_learned = previous->tasks_learned;
  reference.tasks_learned.push_back(finished_task);
  return reference;
}

std::size_t modularity_period(double p) {
  if (!(p > 0.0)) return 0;
  return static_cast<std::size_t>(std::max(1.0, std::round(1.0 / p)));
}

Objectives objectives_for_generation(std::size_t generation, const WpConfig& wp,
                                     const Individual& individual) {
  const std::size_t period = modularity_period(wp.p);
  if (period > 0 && generation % period == 0) {
    return {individual.fitness.revised,
            -static_cast<double>(connection_count(individual.genome))};
  }
  return {individual.fitness.revised};
}

}  // namespace wpevo
