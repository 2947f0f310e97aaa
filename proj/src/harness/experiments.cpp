#include "wpevo/harness/experiments.hpp"

#include <algorithm>
#include <limits>

#include "wpevo/errors.hpp"
#include "wpevo/harness/stats.hpp"
#include "wpevo/parallel.hpp"

namespace wpevo {

SweepResult lambda_sweep(const SweepOptions& options, const RunConfig& base) {
  if (options.grid.empty()) throw ConfigError("sweep grid must not be empty");
  SweepResult result;
  for (const LambdaPair& cell : options.grid) {
    std::vector<double> penalties;
    std::vector<double> task1;
    std::vector<double> task2;
    std::size_t running = 0;
    for (std::size_t r = 0; r < options.repeats; ++r) {
      RunConfig config = base;
      config.technique = Technique::WPModularity;
      config.task_sequence = {options.tasks[0], options.tasks[1]};
      config.threshold.reset();
      config.wp.lambda1 = cell.lambda1;
      config.wp.lambda2 = cell.lambda2;
      config.evolution.master_seed = base.evolution.master_seed + r;

      const RunResult run = run_continual(config);
      if (!run.reference) throw ContractViolation("sweep run finished without a reference");
      const PenaltyModel measure(*run.reference, options.measure.lambda1, options.measure.lambda2);
      const TaskSpec first = config.task(options.tasks[0]);

      const auto& pop = run.final_population;
      std::vector<double> f1(pop.size());
      parallel_for(pop.size(), config.evolution.threads,
                   [&](std::size_t i) { f1[i] = evaluate(pop[i].genome, first); });
      for (std::size_t i = 0; i < pop.size(); ++i) {
        SweepSample s;
        s.lambdas = cell;
        s.repeat = r;
        s.individual_index = running++;
        s.penalty = measure(pop[i].genome);
        s.task1_fitness = f1[i];
        // The last phase was the second task, so the cached task fitness is it.
        s.task2_fitness = pop[i].fitness.task;
        penalties.push_back(s.penalty);
        task1.push_back(s.task1_fitness);
        task2.push_back(s.task2_fitness);
        result.samples.push_back(s);
      }
    }
    SweepCellSummary summary;
    summary.lambdas = cell;
    summary.samples = penalties.size();
    summary.mean_task1 = stats::mean(task1);
    summary.mean_task2 = stats::mean(task2);
    summary.spearman = stats::spearman(penalties, task1);
    result.cells.push_back(summary);
  }
  return result;
}

const TechniqueSummary& ComparisonResult::summary(Technique t) const {
  for (const auto& s : summaries) {
    if (s.technique == t) return s;
  }
  throw ContractViolation("technique missing from comparison");
}

std::vector<const ComparisonRun*> ComparisonResult::runs_of(Technique t) const {
  std::vector<const ComparisonRun*> out;
  for (const auto& run : runs) {
    if (run.technique == t) out.push_back(&run);
  }
  std::sort(out.begin(), out.end(),
            [](const ComparisonRun* a, const ComparisonRun* b) { return a->repeat < b->repeat; });
  return out;
}

ComparisonResult technique_comparison(const RunConfig& base, std::size_t repeats,
                                      const RunObserver& observer) {
  if (repeats == 0) throw ConfigError("repeats must be >= 1");
  ComparisonResult result;
  result.tasks = base.task_sequence;
  const std::size_t n_tasks = base.task_sequence.size();

  for (std::size_t r = 0; r < repeats; ++r) {
    for (Technique technique : kAllTechniques) {
      RunConfig config = base;
      config.technique = technique;
      config.threshold.reset();
      config.evolution.master_seed = base.evolution.master_seed + r;
      const RunResult run = run_continual(config);

      ComparisonRun entry;
      entry.technique = technique;
      entry.repeat = r;
      entry.seed = config.evolution.master_seed;
      entry.final_task_fitness = run.final_task_fitness;
      for (const auto& rec : run.retention) entry.retention.push_back(rec.task1_fitness);
      entry.overall = run.overall_fitness();
      if (observer) observer(entry, run);
      result.runs.push_back(std::move(entry));
    }
  }

  for (Technique technique : kAllTechniques) {
    TechniqueSummary summary;
    summary.technique = technique;
    summary.mean_task_fitness.assign(n_tasks, 0.0);
    summary.mean_retention.assign(n_tasks, 0.0);
    const auto runs = result.runs_of(technique);
    const ComparisonRun* best = nullptr;
    for (const ComparisonRun* run : runs) {
      for (std::size_t t = 0; t < n_tasks; ++t) {
        summary.mean_task_fitness[t] += run->final_task_fitness[t];
        summary.mean_retention[t] += run->retention[t];
      }
      summary.mean_overall += run->overall;
      if (best == nullptr || run->overall > best->overall) best = run;
    }
    const auto count = static_cast<double>(runs.size());
    for (std::size_t t = 0; t < n_tasks; ++t) {
      summary.mean_task_fitness[t] /= count;
      summary.mean_retention[t] /= count;
    }
    summary.mean_overall /= count;
    summary.best_overall = best->overall;
    summary.best_run_task_fitness = best->final_task_fitness;
    result.summaries.push_back(std::move(summary));
  }
  return result;
}

CalibrationResult calibrate_bounds(TaskId task, std::size_t budget, std::size_t generations,
                                   const RunConfig& base) {
  if (budget == 0) throw ConfigError("calibration budget must be >= 1");
  CalibrationResult result;
  result.task = task;
  result.raw_min = std::numeric_limits<double>::infinity();
  result.raw_max = -std::numeric_limits<double>::infinity();

  for (std::size_t b = 0; b < budget; ++b) {
    EvolutionConfig evolution = base.evolution;
    evolution.master_seed = base.evolution.master_seed + b;
    RunConfig seeded = base;
    seeded.evolution = evolution;
    const TaskSpec spec = seeded.task(task);

    Evaluator raw = [&spec](const Genome& genome) {
      const double r = mean_raw_return(genome, spec);
      return Fitness{r, 0.0, r};
    };
    ObjectiveScheme single = [](const Individual& ind) { return Objectives{ind.fitness.revised}; };

    Rng population_rng(mix_seed(evolution.master_seed, 0));
    Rng evolution_rng(mix_seed(evolution.master_seed, 1));
    Population population = initial_population(evolution, base.topology, population_rng);
    evaluate_population(population, raw, evolution.threads);
    auto observe = [&](const Population& pop) {
      for (const auto& ind : pop) {
        result.raw_min = std::min(result.raw_min, ind.fitness.task);
        result.raw_max = std::max(result.raw_max, ind.fitness.task);
      }
    };
    observe(population);
    for (std::size_t g = 0; g < generations; ++g) {
      population = evolve_generation(population, raw, single, evolution, evolution_rng);
      observe(population);
    }
  }
  return result;
}

}  // namespace wpevo
