#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wpevo/environments.hpp"
#include "wpevo/evolution.hpp"
#include "wpevo/harness/config.hpp"
#include "wpevo/weight_protection.hpp"

namespace wpevo {

enum class Technique : std::uint8_t { Normal, Modularity, WP, WPModularity };

inline constexpr std::array<Technique, 4> kAllTechniques{
    Technique::Normal, Technique::Modularity, Technique::WP, Technique::WPModularity};

std::string_view technique_name(Technique t);  // normal, modularity, wp, wp+modularity
Technique parse_technique(std::string_view name);
constexpr bool uses_wp(Technique t) { return t == Technique::WP || t == Technique::WPModularity; }
constexpr bool uses_modularity(Technique t) {
  return t == Technique::Modularity || t == Technique::WPModularity;
}

struct TaskOverride {
  std::optional<double> raw_min;
  std::optional<double> raw_max;
  std::optional<std::size_t> episode_cap;
  std::optional<EvalSeeds> seeds;
};

struct RunConfig {
  Technique technique = Technique::WPModularity;
  std::vector<TaskId> task_sequence{TaskId::CartPole, TaskId::Pendulum, TaskId::MountainCar,
                                    TaskId::AgentOrientation};
  std::size_t generations_per_task = 40;
  std::optional<double> threshold;
  std::size_t generation_cap = 2000;
  Topology topology = kStandardTopology;
  EvolutionConfig evolution;
  WpConfig wp;
  std::map<TaskId, TaskOverride> task_overrides;
  std::string output_dir;

  /// Throws ConfigError on an invalid combination.
  void validate() const;
  /// Default task definition with this run's seeds and any overrides applied.
  TaskSpec task(TaskId id) const;
  /// wp with p forced to 0 when the technique has no modularity pressure.
  WpConfig effective_wp() const;
};

/// Builds a RunConfig from flat keys; unknown keys are rejected.
RunConfig run_config_from(const KeyValueConfig& kv);
KeyValueConfig to_key_values(const RunConfig& config);

struct GenerationStats {
  std::size_t generation = 0;
  std::size_t task_index = 0;
  TaskId task = TaskId::CartPole;
  double mean_task_fitness = 0.0;
  double max_task_fitness = 0.0;
  double mean_revised = 0.0;
  double max_revised = 0.0;
  double mean_connections = 0.0;
};

/// Task-one fitness of the selected best individual at a task boundary.
struct RetentionRecord {
  std::size_t after_task_index = 0;
  TaskId task = TaskId::CartPole;
  double task1_fitness = 0.0;
};

struct RunResult {
  Technique technique = Technique::Normal;
  std::vector<TaskId> task_sequence;
  std::vector<GenerationStats> stats;
  std::vector<RetentionRecord> retention;
  /// Best individual re-evaluated on every task of the sequence, in order.
  std::vector<double> final_task_fitness;
  Genome best;
  Population final_population;
  /// Reference in effect during the last task phase, if any boundary passed.
  std::optional<ReferenceModel> reference;

  // Threshold loop only.
  bool converged = true;
  std::vector<std::size_t> visits;

  double overall_fitness() const;
};

/// Index of the technique's best individual: highest revised fitness (which is
/// the task fitness for techniques without weight protection), lowest index on ties.
std::size_t best_index(const Population& population);

GenerationStats summarize(const Population& population, std::size_t generation,
                          std::size_t task_index, TaskId task);

/// Evolves generations_per_task generations on each task in order.
RunResult run_continual(const RunConfig& config);

/// Cycles the tasks, moving on whenever population mean fitness reaches the
/// threshold; stops once every task was visited and the population holds the
/// threshold on all tasks at once, or at generation_cap (converged = false).
RunResult run_threshold_loop(const RunConfig& config);

}  // namespace wpevo
