#include "wpevo/environments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wpevo/envs/agent_orientation.hpp"
#include "wpevo/envs/classic_control.hpp"
#include "wpevo/errors.hpp"

namespace wpevo {

std::string_view task_name(TaskId id) {
  switch (id) {
    case TaskId::CartPole: return "cartpole";
    case TaskId::Pendulum: return "pendulum";
    case TaskId::Acrobot: return "acrobot";
    case TaskId::MountainCar: return "mountaincar";
    case TaskId::AgentOrientation: return "orientation";
  }
  return "unknown";
}

TaskId parse_task(std::string_view name) {
  for (TaskId id : kAllTasks) {
    if (task_name(id) == name) return id;
  }
  throw ConfigError("unknown task id '" + std::string(name) + "'");
}

EvalSeeds eval_seeds_for(std::uint64_t master_seed) {
  EvalSeeds seeds{};
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    seeds[i] = static_cast<std::int64_t>(master_seed + i + 1);
  }
  return seeds;
}

void TaskSpec::validate() const {
  if (!(raw_min < raw_max)) {
    throw ConfigError("task " + std::string(task_name(id)) + ": raw_min must be < raw_max");
  }
  if (episode_cap == 0) {
    throw ConfigError("task " + std::string(task_name(id)) + ": episode_cap must be >= 1");
  }
}

TaskSpec default_task_spec(TaskId id, std::uint64_t master_seed) {
  TaskSpec spec;
  spec.id = id;
  spec.eval_seeds = eval_seeds_for(master_seed);
  // Raw bounds below are the output of `wpevo calibrate` (config/tasks.cfg).
  switch (id) {
    case TaskId::CartPole:
      spec.obs_size = 4;
      spec.action_kind = DiscreteActions{2};
      spec.episode_cap = 200;
      spec.raw_min = 8.8;
      spec.raw_max = 200.0;
      break;
    case TaskId::Pendulum:
      spec.obs_size = 3;
      spec.action_kind = BoxActions{{Bounds{-2.0, 2.0}}};
      spec.episode_cap = 200;
      spec.raw_min = -1904.6105150170938;
      spec.raw_max = -619.1460550741027;
      break;
    case TaskId::Acrobot:
      spec.obs_size = 6;
      spec.action_kind = DiscreteActions{3};
      spec.episode_cap = 500;
      spec.raw_min = -500.0;
      spec.raw_max = -66.6;
      break;
    case TaskId::MountainCar:
      spec.obs_size = 2;
      spec.action_kind = DiscreteActions{3};
      spec.episode_cap = 200;
      spec.raw_min = -200.0;
      spec.raw_max = -93.6;
      break;
    case TaskId::AgentOrientation:
      spec.obs_size = envs::AgentOrientation::kSensors;
      spec.action_kind = DiscreteActions{3};
      spec.episode_cap = envs::AgentOrientation::kEpisodeTicks;
      spec.raw_min = 1.803543234184239;
      spec.raw_max = 3.630560661637424;
      break;
  }
  return spec;
}

BoxAction box_action(std::span<const double> values) {
  if (values.size() > kOutputSize) throw ContractViolation("too many box signals");
  BoxAction action;
  action.size = values.size();
  std::copy(values.begin(), values.end(), action.values.begin());
  return action;
}

// ---------------------------------------------------------------------------

Observation Environment::reset(std::int64_t seed) {
  steps_ = 0;
  done_ = false;
  reset_state(seed);
  return observe();
}

Transition Environment::step(const Action& action) {
  if (done_) throw ContractViolation("step() on a finished episode");
  auto [reward, terminal] = advance(action);
  ++steps_;
  done_ = terminal || steps_ >= episode_cap_;
  return {observe(), reward, done_};
}

std::size_t Environment::discrete_index(const Action& action, std::size_t count) const {
  const auto* discrete = std::get_if<DiscreteAction>(&action);
  if (discrete == nullptr) {
    throw ContractViolation(std::string(task_name(id())) + " expects a discrete action");
  }
  if (discrete->index >= count) {
    throw ContractViolation(std::string(task_name(id())) + ": action index " +
                            std::to_string(discrete->index) + " out of range");
  }
  return discrete->index;
}

std::unique_ptr<Environment> make_environment(const TaskSpec& task) {
  switch (task.id) {
    case TaskId::CartPole: return std::make_unique<envs::CartPole>(task.episode_cap);
    case TaskId::Pendulum: return std::make_unique<envs::Pendulum>(task.episode_cap);
    case TaskId::Acrobot: return std::make_unique<envs::Acrobot>(task.episode_cap);
    case TaskId::MountainCar: return std::make_unique<envs::MountainCar>(task.episode_cap);
    case TaskId::AgentOrientation:
      return std::make_unique<envs::AgentOrientation>(task.episode_cap);
  }
  throw ConfigError("unknown task id");
}

ResetResult env_reset(const TaskSpec& task, std::int64_t seed) {
  ResetResult result{make_environment(task), {}};
  result.observation = result.env->reset(seed);
  return result;
}

// ---------------------------------------------------------------------------

namespace {

Action choose_action(const NetworkOutput& output, const ActionKind& kind) {
  if (const auto* discrete = std::get_if<DiscreteActions>(&kind)) {
    return DiscreteAction{interpret_discrete(output, discrete->count)};
  }
  const auto& box = std::get<BoxActions>(kind);
  return box_action(interpret_box(output, box.bounds));
}

}  // namespace

EpisodeResult run_episode(const RnnParameters& params, const TaskSpec& task, std::int64_t seed) {
  auto env = make_environment(task);
  Observation obs = env->reset(seed);
  RnnState state = reset_state(params.topology());
  const simd::KernelTable& kernels = simd::active_kernels();

  EpisodeResult result;
  try {
    while (!env->done()) {
      StepResult out = step(params, state, obs.padded(), kernels);
      state = out.next;
      const Transition t = env->step(choose_action(out.output, task.action_kind));
      result.raw_return += t.reward;
      obs = t.observation;
    }
  } catch (const EvaluationError&) {
    result.failed = true;
  }
  if (!std::isfinite(result.raw_return)) result.failed = true;
  result.steps = env->steps();
  result.terminated_early = env->done() && env->steps() < env->episode_cap();
  return result;
}

double mean_raw_return(const RnnParameters& params, const TaskSpec& task) {
  double total = 0.0;
  for (std::int64_t seed : task.eval_seeds) {
    const EpisodeResult episode = run_episode(params, task, seed);
    total += episode.failed ? task.raw_min : episode.raw_return;
  }
  return total / static_cast<double>(task.eval_seeds.size());
}

double mean_raw_return(const Genome& genome, const TaskSpec& task) {
  return mean_raw_return(decode(genome), task);
}

double normalize(double raw, const TaskSpec& task) {
  const double scaled = (raw - task.raw_min) / (task.raw_max - task.raw_min);
  if (std::isnan(scaled)) return 0.0;
  return std::clamp(scaled, 0.0, 1.0);
}

double evaluate(const Genome& genome, const TaskSpec& task) {
  return normalize(mean_raw_return(genome, task), task);
}

double evaluate(const Genome& genome, const TaskSpec& task, const Topology& topology) {
  return normalize(mean_raw_return(decode(genome, topology), task), task);
}

}  // namespace wpevo
