// Command-line front end: run, sweep, compare, calibrate, eval, export.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "wpevo/errors.hpp"
#include "wpevo/harness/experiments.hpp"
#include "wpevo/harness/io.hpp"
#include "wpevo/harness/run.hpp"

namespace {

using namespace wpevo;

constexpr int kUsageError = 2;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Flat key = value run config file");
  cmd->add_option("--seed", flags.seed, "Master seed (overrides config 'seed')");
  cmd->add_option("--out", flags.out, "Output directory");
}

KeyValueConfig load_key_values(const CommonFlags& flags) {
  KeyValueConfig kv;
  if (!flags.config_path.empty()) kv = KeyValueConfig::load(flags.config_path);
  if (flags.seed) kv.set("seed", std::to_string(*flags.seed));
  return kv;
}

std::string output_dir(const CommonFlags& flags, const RunConfig& config) {
  if (!flags.out.empty()) return flags.out;
  if (!config.output_dir.empty()) return config.output_dir;
  return "wpevo_out";
}

std::vector<LambdaPair> parse_grid(const std::string& text) {
  std::vector<LambdaPair> grid;
  for (const auto& cell : split(text, ',')) {
    const auto parts = split(cell, ':');
    if (parts.size() != 2) throw ConfigError("sweep grid cell '" + cell + "': expected l1:l2");
    grid.push_back({parse_real(parts[0], "lambda1"), parse_real(parts[1], "lambda2")});
  }
  return grid;
}

int cmd_run(const CommonFlags& flags) {
  const RunConfig config = run_config_from(load_key_values(flags));
  const RunResult result = config.threshold ? run_threshold_loop(config) : run_continual(config);
  const std::string dir = output_dir(flags, config);
  io::write_run(result, config, dir);
  fmt::print("technique {} generations {} overall {}\n", technique_name(config.technique),
             result.stats.size(), result.overall_fitness());
  if (config.threshold) {
    fmt::print("converged {}\n", result.converged ? "yes" : "no");
  }
  return 0;
}

int cmd_sweep(const CommonFlags& flags, std::optional<std::size_t> repeats,
              const std::string& grid_text) {
  const KeyValueConfig kv = load_key_values(flags);
  RunConfig base = run_config_from(kv);
  SweepOptions options;
  options.repeats = repeats.value_or(kv.count("repeats", 10));
  const std::string grid = !grid_text.empty()
                               ? grid_text
                               : kv.get("sweep.grid").value_or(
                                     "0:0,0.035:0,0:0.02,0.2:0.1,0.035:0.02");
  options.grid = parse_grid(grid);
  options.measure = {kv.real("sweep.measure_lambda1", 0.035),
                     kv.real("sweep.measure_lambda2", 0.02)};
  base.wp.p = kv.real("wp.p", 0.2);

  const SweepResult result = lambda_sweep(options, base);
  const std::string dir = output_dir(flags, base);
  io::ensure_directory(dir);
  io::write_text(dir + "/sweep.csv", io::sweep_csv(result));
  io::write_text(dir + "/sweep_summary.csv", io::sweep_summary_csv(result));
  for (const auto& cell : result.cells) {
    fmt::print("lambda1 {} lambda2 {} task1 {:.4f} task2 {:.4f} spearman {:.4f}\n",
               cell.lambdas.lambda1, cell.lambdas.lambda2, cell.mean_task1, cell.mean_task2,
               cell.spearman);
  }
  return 0;
}

int cmd_compare(const CommonFlags& flags, std::optional<std::size_t> repeats) {
  const KeyValueConfig kv = load_key_values(flags);
  const RunConfig base = run_config_from(kv);
  const std::size_t n = repeats.value_or(kv.count("repeats", 10));
  const std::string dir = output_dir(flags, base);
  io::ensure_directory(dir + "/runs");

  auto persist = [&](const ComparisonRun& entry, const RunResult& run) {
    RunConfig config = base;
    config.technique = entry.technique;
    config.evolution.master_seed = entry.seed;
    io::write_run(run, config,
                  fmt::format("{}/runs/{}_r{}", dir, technique_name(entry.technique),
                              entry.repeat));
  };
  const ComparisonResult result = technique_comparison(base, n, persist);
  io::write_text(dir + "/comparison.csv", io::comparison_csv(result));
  io::write_text(dir + "/runs.csv", io::runs_csv(result));
  io::write_text(dir + "/summary.json", io::summary_json(result));
  for (const auto& s : result.summaries) {
    fmt::print("{:<14} mean overall {:.3f} best overall {:.3f}\n", technique_name(s.technique),
               s.mean_overall, s.best_overall);
  }
  return 0;
}

int cmd_calibrate(const CommonFlags& flags, const std::vector<std::string>& task_names,
                  std::optional<std::size_t> budget, std::optional<std::size_t> generations) {
  const KeyValueConfig kv = load_key_values(flags);
  const RunConfig base = run_config_from(kv);
  std::vector<TaskId> tasks;
  if (task_names.empty()) {
    tasks.assign(kAllTasks.begin(), kAllTasks.end());
  } else {
    for (const auto& name : task_names) tasks.push_back(parse_task(name));
  }
  const std::size_t runs = budget.value_or(kv.count("calibrate.budget", 3));
  const std::size_t gens = generations.value_or(kv.count("calibrate.generations", 40));

  std::string csv = "task_id,raw_min,raw_max\n";
  std::string cfg = "# Raw return bounds from single-task evolutionary runs.\n";
  for (TaskId id : tasks) {
    const CalibrationResult c = calibrate_bounds(id, runs, gens, base);
    csv += fmt::format("{},{},{}\n", task_name(id), c.raw_min, c.raw_max);
    cfg += fmt::format("task.{0}.raw_min = {1}\ntask.{0}.raw_max = {2}\ntask.{0}.episode_cap = {3}\n",
                       task_name(id), c.raw_min, c.raw_max, base.task(id).episode_cap);
    fmt::print("{:<12} raw_min {} raw_max {}\n", task_name(id), c.raw_min, c.raw_max);
  }
  const std::string dir = output_dir(flags, base);
  io::ensure_directory(dir);
  io::write_text(dir + "/calibration.csv", csv);
  io::write_text(dir + "/tasks.cfg", cfg);
  return 0;
}

int cmd_eval(const CommonFlags& flags, const std::string& genome_path,
             const std::vector<std::string>& task_names) {
  const RunConfig config = run_config_from(load_key_values(flags));
  const Genome genome = load_genome(genome_path);
  std::vector<TaskId> tasks;
  if (task_names.empty()) {
    tasks.assign(kAllTasks.begin(), kAllTasks.end());
  } else {
    for (const auto& name : task_names) tasks.push_back(parse_task(name));
  }
  for (TaskId id : tasks) {
    const TaskSpec spec = config.task(id);
    const double raw = mean_raw_return(genome, spec);
    fmt::print("{} fitness {} raw {}\n", task_name(id), normalize(raw, spec), raw);
  }
  return 0;
}

int cmd_export(const CommonFlags& flags, const std::string& run_dir) {
  const RunResult result = io::run_from_json(io::read_text(run_dir + "/result.json"));
  const std::string dir = flags.out.empty() ? run_dir : flags.out;
  io::ensure_directory(dir);
  io::write_text(dir + "/stats.csv", io::stats_csv(result));
  io::write_text(dir + "/retention.csv", io::retention_csv(result));
  fmt::print("exported {} generation rows, {} retention rows to {}\n", result.stats.size(),
             result.retention.size(), dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weight protection neuroevolution experiments"};
  app.require_subcommand(1);

  CommonFlags run_flags, sweep_flags, compare_flags, calibrate_flags, eval_flags, export_flags;
  std::optional<std::size_t> sweep_repeats, compare_repeats, budget, generations;
  std::string grid, genome_path, run_dir;
  std::vector<std::string> calibrate_tasks, eval_tasks;

  auto* run = app.add_subcommand("run", "Run one configuration (continual or threshold loop)");
  add_common(run, run_flags);

  auto* sweep = app.add_subcommand("sweep", "Penalty weight sweep on pendulum -> acrobot");
  add_common(sweep, sweep_flags);
  sweep->add_option("--repeats", sweep_repeats, "Runs per grid cell");
  sweep->add_option("--grid", grid, "Cells as l1:l2,l1:l2,...");

  auto* compare = app.add_subcommand("compare", "Compare the four techniques with paired seeds");
  add_common(compare, compare_flags);
  compare->add_option("--repeats", compare_repeats, "Runs per technique");

  auto* calibrate = app.add_subcommand("calibrate", "Derive raw return bounds per task");
  add_common(calibrate, calibrate_flags);
  calibrate->add_option("--task", calibrate_tasks, "Task(s) to calibrate (default: all)");
  calibrate->add_option("--budget", budget, "Single-task runs per task");
  calibrate->add_option("--generations", generations, "Generations per calibration run");

  auto* eval = app.add_subcommand("eval", "Evaluate a saved genome");
  add_common(eval, eval_flags);
  eval->add_option("--genome", genome_path, "Genome file")->required();
  eval->add_option("--task", eval_tasks, "Task(s) to evaluate (default: all)");

  auto* exp = app.add_subcommand("export", "Regenerate CSV files from a run's result.json");
  add_common(exp, export_flags);
  exp->add_option("--run", run_dir, "Run output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsageError;
  }

  try {
    if (*run) return cmd_run(run_flags);
    if (*sweep) return cmd_sweep(sweep_flags, sweep_repeats, grid);
    if (*compare) return cmd_compare(compare_flags, compare_repeats);
    if (*calibrate) return cmd_calibrate(calibrate_flags, calibrate_tasks, budget, generations);
    if (*eval) return cmd_eval(eval_flags, genome_path, eval_tasks);
    if (*exp) return cmd_export(export_flags, run_dir);
  } catch (const ConfigError& e) {
    std::cerr << "wpevo: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "wpevo: " << e.what() << "\n";
    return 1;
  }
  return kUsageError;
}
