#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wpevo/environments.hpp"
#include "wpevo/evolution.hpp"
#include "wpevo/genome.hpp"
#include "wpevo/simd/kernels.hpp"

namespace wpevo {

/// Weight protection hyper-parameters.
///   lambda1  weight on squared drift of connections the reference already has
///   lambda2  weight on squared magnitude of connections the reference lacks
///   p        modularity objective frequency: size objective every round(1/p)
///            generations, never when p = 0
/// lambda1 > lambda2 is the useful regime (1.5x to 2.5x worked best).
struct WpConfig {
  double lambda1 = 0.035;
  double lambda2 = 0.02;
  double p = 0.2;

  void validate() const;
};

/// Frozen snapshot of the best individual at the last task boundary.
struct ReferenceModel {
  Genome genome;
  std::vector<TaskId> tasks_learned;
};

/// Penalty against one reference, precomputed as a weighted squared distance
///   sum_i c_i (theta_i - a_i)^2
/// with c_i = lambda1, a_i = theta*_i on reference-active positions and
/// c_i = lambda2, a_i = 0 elsewhere. theta is the genome's effective
/// (masked) weight, so a reference connection the genome dropped costs
/// lambda1 * theta*^2 and an inactive non-reference position costs nothing.
class PenaltyModel {
 public:
  PenaltyModel(const ReferenceModel& reference, double lambda1, double lambda2);

  /// Throws StructuralError when the genome layout differs from the reference.
  double operator()(const Genome& genome,
                    const simd::KernelTable& kernels = simd::active_kernels()) const;

 private:
  Topology topology_;
  std::vector<double> anchor_;
  std::vector<double> coeff_;
};

double wp_penalty(const Genome& genome, const ReferenceModel& reference, const WpConfig& wp);

/// task_fitness - penalty.
double revised_fitness(double task_fitness, double penalty);

/// Copies the individual with the highest revised fitness (lowest index on
/// ties) and records `finished_task` after the previous reference's history.
ReferenceModel select_reference(const Population& population, TaskId finished_task,
                                const ReferenceModel* previous = nullptr);

/// Generations between size-objective activations, 0 when p = 0.
std::size_t modularity_period(double p);

/// (revised, -connections) on modularity generations, else (revised).
Objectives objectives_for_generation(std::size_t generation, const WpConfig& wp,
                                     const Individual& individual);

}  // namespace wpevo
