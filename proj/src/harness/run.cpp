#include "wpevo/harness/run.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "wpevo/errors.hpp"
#include "wpevo/parallel.hpp"

namespace wpevo {

std::string_view technique_name(Technique t) {
  switch (t) {
    case Technique::Normal: return "normal";
    case Technique::Modularity: return "modularity";
    case Technique::WP: return "wp";
    case Technique::WPModularity: return "wp+modularity";
  }
  return "unknown";
}

Technique parse_technique(std::string_view name) {
  for (Technique t : kAllTechniques) {
    if (technique_name(t) == name) return t;
  }
  throw ConfigError("unknown technique '" + std::string(name) + "'");
}

void RunConfig::validate() const {
  if (task_sequence.empty()) throw ConfigError("tasks: sequence must not be empty");
  if (!threshold && generations_per_task == 0) {
    throw ConfigError("generations_per_task must be >= 1");
  }
  if (threshold && !(*threshold >= 0.0 && *threshold <= 1.0)) {
    throw ConfigError("threshold must lie in [0, 1]");
  }
  if (threshold && generation_cap == 0) throw ConfigError("generation_cap must be >= 1");
  topology.validate();
  evolution.validate();
  wp.validate();
  for (TaskId id : task_sequence) task(id).validate();
}

TaskSpec RunConfig::task(TaskId id) const {
  TaskSpec spec = default_task_spec(id, evolution.master_seed);
  if (auto it = task_overrides.find(id); it != task_overrides.end()) {
    const TaskOverride& o = it->second;
    if (o.raw_min) spec.raw_min = *o.raw_min;
    if (o.raw_max) spec.raw_max = *o.raw_max;
    if (o.episode_cap) spec.episode_cap = *o.episode_cap;
    if (o.seeds) spec.eval_seeds = *o.seeds;
  }
  return spec;
}

WpConfig RunConfig::effective_wp() const {
  WpConfig out = wp;
  if (!uses_modularity(technique)) out.p = 0.0;
  return out;
}

namespace {

const std::set<std::string>& scalar_keys() {
  static const std::set<std::string> keys{
      "technique",
      "tasks",
      "generations_per_task",
      "threshold",
      "generation_cap",
      "seed",
      "output_dir",
      "topology.hidden",
      "evolution.population_size",
      "evolution.crossover_prob",
      "evolution.mutation_prob",
      "evolution.per_gene_prob",
      "evolution.structural_prob",
      "evolution.gaussian_sigma",
      "evolution.init_fraction",
      "evolution.threads",
      "wp.lambda1",
      "wp.lambda2",
      "wp.p",
      "wp.enabled",
      "modularity.enabled",
      "repeats",
      "sweep.grid",
      "sweep.measure_lambda1",
      "sweep.measure_lambda2",
      "calibrate.budget",
      "calibrate.generations",
  };
  return keys;
}

}  // namespace

RunConfig run_config_from(const KeyValueConfig& kv) {
  RunConfig config;
  for (const auto& [key, value] : kv.entries()) {
    if (scalar_keys().contains(key)) continue;
    const auto parts = split(key, '.');
    if (parts.size() == 3 && parts[0] == "task") {
      const TaskId id = parse_task(parts[1]);
      TaskOverride& o = config.task_overrides[id];
      if (parts[2] == "raw_min") {
        o.raw_min = parse_real(value, key);
      } else if (parts[2] == "raw_max") {
        o.raw_max = parse_real(value, key);
      } else if (parts[2] == "episode_cap") {
        o.episode_cap = parse_count(value, key);
      } else if (parts[2] == "seeds") {
        const auto items = split(value, ',');
        if (items.size() != kEvalEpisodes) throw ConfigError(key + ": expected 5 seeds");
        EvalSeeds seeds{};
        for (std::size_t i = 0; i < kEvalEpisodes; ++i) {
          seeds[i] = static_cast<std::int64_t>(parse_count(items[i], key));
        }
        o.seeds = seeds;
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
      continue;
    }
    throw ConfigError("unknown config key '" + key + "'");
  }

  if (const auto t = kv.get("technique")) {
    config.technique = parse_technique(*t);
  } else {
    const bool wp = kv.flag("wp.enabled", true);
    const bool mod = kv.flag("modularity.enabled", true);
    config.technique = wp ? (mod ? Technique::WPModularity : Technique::WP)
                          : (mod ? Technique::Modularity : Technique::Normal);
  }
  if (kv.has("tasks")) {
    config.task_sequence.clear();
    for (const auto& name : kv.list("tasks")) config.task_sequence.push_back(parse_task(name));
  }
  config.generations_per_task = kv.count("generations_per_task", config.generations_per_task);
  if (kv.has("threshold")) config.threshold = kv.real("threshold", 0.95);
  config.generation_cap = kv.count("generation_cap", config.generation_cap);
  config.output_dir = kv.get("output_dir").value_or("");
  config.topology.hidden = kv.count("topology.hidden", config.topology.hidden);

  EvolutionConfig& e = config.evolution;
  e.master_seed = kv.count("seed", e.master_seed);
  e.population_size = kv.count("evolution.population_size", e.population_size);
  e.crossover_prob = kv.real("evolution.crossover_prob", e.crossover_prob);
  e.mutation_prob = kv.real("evolution.mutation_prob", e.mutation_prob);
  e.per_gene_prob = kv.real("evolution.per_gene_prob", e.per_gene_prob);
  e.structural_prob = kv.real("evolution.structural_prob", e.structural_prob);
  e.gaussian_sigma = kv.real("evolution.gaussian_sigma", e.gaussian_sigma);
  e.init_fraction = kv.real("evolution.init_fraction", e.init_fraction);
  e.threads = kv.count("evolution.threads", e.threads);

  config.wp.lambda1 = kv.real("wp.lambda1", config.wp.lambda1);
  config.wp.lambda2 = kv.real("wp.lambda2", config.wp.lambda2);
  config.wp.p = kv.real("wp.p", config.wp.p);

  config.validate();
  return config;
}

KeyValueConfig to_key_values(const RunConfig& config) {
  KeyValueConfig kv;
  auto real = [](double v) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
    return std::string(buffer, end);
  };
  kv.set("technique", std::string(technique_name(config.technique)));
  std::string tasks;
  for (TaskId id : config.task_sequence) {
    if (!tasks.empty()) tasks += ",";
    tasks += task_name(id);
  }
  kv.set("tasks", tasks);
  kv.set("generations_per_task", std::to_string(config.generations_per_task));
  if (config.threshold) kv.set("threshold", real(*config.threshold));
  kv.set("generation_cap", std::to_string(config.generation_cap));
  kv.set("seed", std::to_string(config.evolution.master_seed));
  kv.set("topology.hidden", std::to_string(config.topology.hidden));
  const EvolutionConfig& e = config.evolution;
  kv.set("evolution.population_size", std::to_string(e.population_size));
  kv.set("evolution.crossover_prob", real(e.crossover_prob));
  kv.set("evolution.mutation_prob", real(e.mutation_prob));
  kv.set("evolution.per_gene_prob", real(e.per_gene_prob));
  kv.set("evolution.structural_prob", real(e.structural_prob));
  kv.set("evolution.gaussian_sigma", real(e.gaussian_sigma));
  kv.set("evolution.init_fraction", real(e.init_fraction));
  kv.set("wp.lambda1", real(config.wp.lambda1));
  kv.set("wp.lambda2", real(config.wp.lambda2));
  kv.set("wp.p", real(config.wp.p));
  for (TaskId id : config.task_sequence) {
    const TaskSpec spec = config.task(id);
    const std::string prefix = "task." + std::string(task_name(id)) + ".";
    kv.set(prefix + "raw_min", real(spec.raw_min));
    kv.set(prefix + "raw_max", real(spec.raw_max));
    kv.set(prefix + "episode_cap", std::to_string(spec.episode_cap));
    std::string seeds;
    for (auto s : spec.eval_seeds) {
      if (!seeds.empty()) seeds += ",";
      seeds += std::to_string(s);
    }
    kv.set(prefix + "seeds", seeds);
  }
  return kv;
}

double RunResult::overall_fitness() const {
  if (final_task_fitness.empty()) return 0.0;
  return std::accumulate(final_task_fitness.begin(), final_task_fitness.end(), 0.0) /
         static_cast<double>(final_task_fitness.size());
}

std::size_t best_index(const Population& population) {
  if (population.empty()) throw ContractViolation("best_index on an empty population");
  std::size_t best = 0;
  for (std::size_t i = 1; i < population.size(); ++i) {
    if (population[i].fitness.revised > population[best].fitness.revised) best = i;
  }
  return best;
}

GenerationStats summarize(const Population& population, std::size_t generation,
                          std::size_t task_index, TaskId task) {
  GenerationStats s;
  s.generation = generation;
  s.task_index = task_index;
  s.task = task;
  if (population.empty()) return s;
  s.max_task_fitness = population.front().fitness.task;
  s.max_revised = population.front().fitness.revised;
  for (const auto& ind : population) {
    s.mean_task_fitness += ind.fitness.task;
    s.mean_revised += ind.fitness.revised;
    s.mean_connections += static_cast<double>(connection_count(ind.genome));
    s.max_task_fitness = std::max(s.max_task_fitness, ind.fitness.task);
    s.max_revised = std::max(s.max_revised, ind.fitness.revised);
  }
  const auto n = static_cast<double>(population.size());
  s.mean_task_fitness /= n;
  s.mean_revised /= n;
  s.mean_connections /= n;
  return s;
}

namespace {

// Shared state of one evolutionary run moving across tasks.
class TaskPhaseRunner {
 public:
  explicit TaskPhaseRunner(const RunConfig& config)
      : config_(config),
        wp_(config.effective_wp()),
        evolution_rng_(mix_seed(config.evolution.master_seed, 1)) {
    config_.validate();
    // Population stream depends on the master seed only, so every technique
    // run with the same seed starts from the same individuals.
    Rng population_rng(mix_seed(config.evolution.master_seed, 0));
    population_ = initial_population(config.evolution, config.topology, population_rng);
  }

  void enter_task(std::size_t task_index) {
    task_index_ = task_index;
    task_ = config_.task(config_.task_sequence[task_index]);
    penalty_.reset();
    if (reference_) penalty_.emplace(*reference_, config_.wp.lambda1, config_.wp.lambda2);
    evaluate_population(population_, evaluator(), config_.evolution.threads);
  }

  void evolve_one() {
    const std::size_t generation = generation_;
    const WpConfig wp = wp_;
    ObjectiveScheme scheme = [generation, wp](const Individual& ind) {
      return objectives_for_generation(generation, wp, ind);
    };
    population_ = evolve_generation(population_, evaluator(), scheme, config_.evolution,
                                    evolution_rng_);
    stats_.push_back(summarize(population_, generation_, task_index_, task_.id));
    ++generation_;
  }

  // Boundary bookkeeping: retention of the selected best individual on task
  // one, then the new reference for weight protection.
  void finish_task() {
    const Individual& best = population_[best_index(population_)];
    const TaskSpec first = config_.task(config_.task_sequence.front());
    retention_.push_back({task_index_, task_.id, evaluate(best.genome, first)});
    reference_ = select_reference(population_, task_.id, reference_ ? &*reference_ : nullptr);
  }

  double population_mean_on(const TaskSpec& task) const {
    std::vector<double> fitness(population_.size());
    parallel_for(population_.size(), config_.evolution.threads,
                 [&](std::size_t i) { fitness[i] = evaluate(population_[i].genome, task); });
    return std::accumulate(fitness.begin(), fitness.end(), 0.0) /
           static_cast<double>(fitness.size());
  }

  double current_mean() const {
    double total = 0.0;
    for (const auto& ind : population_) total += ind.fitness.task;
    return total / static_cast<double>(population_.size());
  }

  RunResult finish() {
    RunResult result;
    result.technique = config_.technique;
    result.task_sequence = config_.task_sequence;
    result.stats = std::move(stats_);
    result.retention = std::move(retention_);
    const Individual& best = population_[best_index(population_)];
    result.best = best.genome;
    for (TaskId id : config_.task_sequence) {
      result.final_task_fitness.push_back(evaluate(best.genome, config_.task(id)));
    }
    result.reference = active_reference_;
    result.final_population = std::move(population_);
    return result;
  }

  // Reference used to score the current phase (before finish_task replaces it).
  void remember_active_reference() { active_reference_ = reference_; }

  std::size_t generation() const { return generation_; }

 private:
  Evaluator evaluator() const {
    const bool wp_on = uses_wp(config_.technique);
    return [this, wp_on](const Genome& genome) {
      Fitness f;
      f.task = evaluate(genome, task_);
      if (penalty_) f.penalty = (*penalty_)(genome);
      f.revised = wp_on ? revised_fitness(f.task, f.penalty) : f.task;
      return f;
    };
  }

  const RunConfig& config_;
  WpConfig wp_;
  Rng evolution_rng_;
  Population population_;
  TaskSpec task_;
  std::size_t task_index_ = 0;
  std::size_t generation_ = 0;
  std::optional<ReferenceModel> reference_;
  std::optional<ReferenceModel> active_reference_;
  std::optional<PenaltyModel> penalty_;
  std::vector<GenerationStats> stats_;
  std::vector<RetentionRecord> retention_;
};

}  // namespace

RunResult run_continual(const RunConfig& config) {
  TaskPhaseRunner runner(config);
  for (std::size_t t = 0; t < config.task_sequence.size(); ++t) {
    runner.enter_task(t);
    runner.remember_active_reference();
    for (std::size_t g = 0; g < config.generations_per_task; ++g) runner.evolve_one();
    runner.finish_task();
  }
  return runner.finish();
}

RunResult run_threshold_loop(const RunConfig& config) {
  if (!config.threshold) throw ConfigError("threshold loop requires 'threshold'");
  const double threshold = *config.threshold;
  const std::size_t n = config.task_sequence.size();

  TaskPhaseRunner runner(config);
  std::vector<std::size_t> visits(n, 0);
  std::size_t current = 0;
  bool converged = false;
  runner.enter_task(current);
  runner.remember_active_reference();
  visits[current] = 1;

  while (runner.generation() < config.generation_cap) {
    runner.evolve_one();
    if (runner.current_mean() < threshold) continue;

    const bool all_visited = std::all_of(visits.begin(), visits.end(),
                                         [](std::size_t v) { return v > 0; });
    if (all_visited) {
      bool everywhere = true;
      for (std::size_t t = 0; t < n && everywhere; ++t) {
        if (t == current) continue;
        everywhere = runner.population_mean_on(config.task(config.task_sequence[t])) >= threshold;
      }
      if (everywhere) {
        converged = true;
        break;
      }
    }
    runner.finish_task();
    current = (current + 1) % n;
    ++visits[current];
    runner.enter_task(current);
    runner.remember_active_reference();
  }

  RunResult result = runner.finish();
  result.converged = converged;
  result.visits = std::move(visits);
  return result;
}

}  // namespace wpevo
