#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wpevo/harness/run.hpp"

namespace wpevo {

// ---------------------------------------------------------------------------
// Lambda sweep: pendulum then acrobot, modularity on, penalty weights varied.

struct LambdaPair {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

/// One final-population individual of one sweep run.
struct SweepSample {
  LambdaPair lambdas;
  std::size_t repeat = 0;
  std::size_t individual_index = 0;  // running index across the cell's repeats
  double penalty = 0.0;              // measured with the sweep's fixed yardstick
  double task1_fitness = 0.0;
  double task2_fitness = 0.0;
};

struct SweepCellSummary {
  LambdaPair lambdas;
  std::size_t samples = 0;
  double mean_task1 = 0.0;
  double mean_task2 = 0.0;
  double spearman = 0.0;  // penalty vs task-one fitness, pooled over repeats
};

struct SweepResult {
  std::vector<SweepSample> samples;
  std::vector<SweepCellSummary> cells;
};

struct SweepOptions {
  std::vector<LambdaPair> grid;
  std::size_t repeats = 10;
  std::array<TaskId, 2> tasks{TaskId::Pendulum, TaskId::Acrobot};
  /// Penalty weights used to report every cell's penalty, so cells are
  /// compared on one scale (a lambda = 0 cell would otherwise report 0).
  LambdaPair measure{0.035, 0.02};
};

/// Repeat r of every cell uses master seed base.seed + r.
SweepResult lambda_sweep(const SweepOptions& options, const RunConfig& base);

// ---------------------------------------------------------------------------
// Technique comparison on a task sequence, paired seeds across techniques.

struct ComparisonRun {
  Technique technique = Technique::Normal;
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
  std::vector<double> final_task_fitness;
  std::vector<double> retention;  // task-one fitness after each task
  double overall = 0.0;
};

struct TechniqueSummary {
  Technique technique = Technique::Normal;
  std::vector<double> mean_task_fitness;
  std::vector<double> best_run_task_fitness;  // from the run with the best overall
  double mean_overall = 0.0;
  double best_overall = 0.0;
  std::vector<double> mean_retention;
};

struct ComparisonResult {
  std::vector<TaskId> tasks;
  std::vector<ComparisonRun> runs;
  std::vector<TechniqueSummary> summaries;

  const TechniqueSummary& summary(Technique t) const;
  /// Runs of one technique ordered by repeat.
  std::vector<const ComparisonRun*> runs_of(Technique t) const;
};

/// Called after each finished run (e.g. to persist its files).
using RunObserver = std::function<void(const ComparisonRun&, const RunResult&)>;

/// Repeat r of every technique uses master seed base.seed + r.
ComparisonResult technique_comparison(const RunConfig& base, std::size_t repeats,
                                      const RunObserver& observer = {});

// ---------------------------------------------------------------------------
// Normalization bounds from single-task evolutionary runs.

struct CalibrationResult {
  TaskId task = TaskId::CartPole;
  double raw_min = 0.0;
  double raw_max = 0.0;
};

/// Runs `budget` single-task evolutions of `generations` generations on the
/// raw (unnormalized) mean return; raw_min / raw_max are the worst / best
/// individual returns observed in any evaluated population. Run b uses master
/// seed base.seed + b.
CalibrationResult calibrate_bounds(TaskId task, std::size_t budget, std::size_t generations,
                                   const RunConfig& base);

}  // namespace wpevo
